#include "spiralcap/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "spiralcap/errors.hpp"

namespace spiralcap {

namespace {

constexpr double kPi = 3.14159265358979323846264338;

double dist(const Point2& a, const Point2& b) {
    return std::hypot(a[0] - b[0], a[1] - b[1]);
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Point2&)>& objective,
                             const std::array<Point2, 3>& initial_simplex,
                             const NelderMeadOptions& opts) {
    std::array<Point2, 3> v = initial_simplex;
    {
        const double area =
            (v[1][0] - v[0][0]) * (v[2][1] - v[0][1]) -
            (v[2][0] - v[0][0]) * (v[1][1] - v[0][1]);
        const double diam = std::max({dist(v[0], v[1]), dist(v[0], v[2]), dist(v[1], v[2])});
        if (diam == 0.0 || std::abs(area) < 1e-12 * diam * diam)
            throw ConfigError("nelder_mead: degenerate initial simplex");
    }

    std::array<double, 3> f = {objective(v[0]), objective(v[1]), objective(v[2])};

    NelderMeadResult result;
    while (true) {
        std::array<int, 3> idx = {0, 1, 2};
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return f[a] < f[b]; });
        const int b = idx[0], s = idx[1], w = idx[2];

        const double diameter =
            std::max({dist(v[0], v[1]), dist(v[0], v[2]), dist(v[1], v[2])});
        const double spread = f[w] - f[b];
        if (diameter < opts.tol_x || spread < opts.tol_f) {
            result.converged = true;
            break;
        }
        if (result.iterations >= opts.max_iter) break;
        ++result.iterations;

        const Point2 c = {0.5 * (v[b][0] + v[s][0]), 0.5 * (v[b][1] + v[s][1])};
        const Point2 xr = {c[0] + (c[0] - v[w][0]), c[1] + (c[1] - v[w][1])};
        const double fr = objective(xr);

        if (fr < f[b]) {
            const Point2 xe = {c[0] + 2.0 * (xr[0] - c[0]), c[1] + 2.0 * (xr[1] - c[1])};
            const double fe = objective(xe);
            if (fe < fr) {
                v[w] = xe;
                f[w] = fe;
            } else {
                v[w] = xr;
                f[w] = fr;
            }
            continue;
        }
        if (fr < f[s]) {
            v[w] = xr;
            f[w] = fr;
            continue;
        }

        bool shrink = false;
        if (fr < f[w]) {
            const Point2 xc = {c[0] + 0.5 * (xr[0] - c[0]), c[1] + 0.5 * (xr[1] - c[1])};
            const double fc = objective(xc);
            if (fc <= fr) {
                v[w] = xc;
                f[w] = fc;
            } else {
                shrink = true;
            }
        } else {
            const Point2 xc = {c[0] + 0.5 * (v[w][0] - c[0]), c[1] + 0.5 * (v[w][1] - c[1])};
            const double fc = objective(xc);
            if (fc < f[w]) {
                v[w] = xc;
                f[w] = fc;
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (int i : {s, w}) {
                v[i] = {v[b][0] + 0.5 * (v[i][0] - v[b][0]),
                        v[b][1] + 0.5 * (v[i][1] - v[b][1])};
                f[i] = objective(v[i]);
            }
        }
    }

    const int best = static_cast<int>(std::min_element(f.begin(), f.end()) - f.begin());
    result.best = v[best];
    result.value = f[best];
    return result;
}

SensitivityOptimum optimize_sensitivity(const CapacitorConfig& base,
                                        const NelderMeadOptions& opts) {
    CapacitorConfig proto = base;
    proto.fixed_cross_section = true;
    proto.d = 0.2;  // placeholder for geometry validation
    proto.omega = 0.0;
    proto.validate();

    const auto mesh =
        std::make_shared<const Mesh2D>(generate_disk_mesh(proto.mesh_geometry()));

    SensitivityOptimum optimum;
    std::map<std::pair<long long, long long>, double> cache;
    bool any_solved = false;

    const auto objective = [&](const Point2& p) {
        const double nu = p[0];
        const double d = p[1];
        SensitivityEvaluation eval;
        eval.nu = nu;
        eval.d = d;

        const std::pair<long long, long long> key = {std::llround(nu * 1e9),
                                                     std::llround(d * 1e9)};
        if (const auto it = cache.find(key); it != cache.end()) {
            eval.cached = true;
            eval.sensitivity = -it->second;
            optimum.evaluations.push_back(eval);
            return it->second;
        }

        double value = 0.0;
        if (d <= 0.02 || nu < 0.0 || d / proto.r_cyl > kPi) {
            eval.guarded = true;  // worst score, no mesh or solver work
        } else {
            try {
                CapacitorConfig point = proto;
                point.omega = nu_to_omega(nu, proto.r_cyl);
                point.d = d;
                const Solution sol = solve_potential(point, mesh);
                const EnergyReport report = energy_report(sol);
                eval.sensitivity = report.sensitivity;
                value = -report.sensitivity;
                any_solved = true;
            } catch (const std::exception&) {
                eval.failed = true;
            }
        }
        cache[key] = value;
        optimum.evaluations.push_back(eval);
        return value;
    };

    NelderMeadOptions effective = opts;
    // plate marking quantizes the width to the angular grid; finer tol_x
    // would only chase mesh noise
    effective.tol_x =
        std::max(opts.tol_x, 2.0 * kPi * proto.r_cyl / proto.mesh.sectors);

    const std::array<Point2, 3> simplex = {
        Point2{0.6, 0.025}, Point2{1.4, 0.025}, Point2{1.0, 0.6}};
    const NelderMeadResult res = nelder_mead(objective, simplex, effective);

    if (!any_solved)
        throw SolverError("optimize_sensitivity: every evaluation failed", 0.0);

    optimum.nu = res.best[0];
    optimum.d_cross = res.best[1];
    optimum.sensitivity = -res.value;
    optimum.iterations = res.iterations;
    optimum.converged = res.converged;
    const double omega_star = nu_to_omega(optimum.nu, proto.r_cyl);
    optimum.d_along = optimum.d_cross /
                      std::sqrt(1.0 + omega_star * omega_star * proto.r_cyl * proto.r_cyl);
    return optimum;
}

}  // namespace spiralcap
