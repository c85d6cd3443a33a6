#include "spiralcap/capacitor.hpp"

#include <cmath>

#include "spiralcap/errors.hpp"
#include "spiralcap/specfun.hpp"

namespace spiralcap {

namespace {

constexpr double kPi = 3.14159265358979323846264338;

// energy of one triangle: eps (A |grad u|^2 + w^2 (A/3) sum_q (y u_x - x u_y)^2)
double triangle_energy(const Mesh2D& mesh, const Triangle& tri,
                       const std::vector<double>& u, double omega, double eps) {
    const Vec2& p1 = mesh.nodes[tri.v[0]];
    const Vec2& p2 = mesh.nodes[tri.v[1]];
    const Vec2& p3 = mesh.nodes[tri.v[2]];
    const double area2 = (p2.x - p1.x) * (p3.y - p1.y) - (p3.x - p1.x) * (p2.y - p1.y);
    const double area = 0.5 * area2;

    const double u1 = u[tri.v[0]], u2 = u[tri.v[1]], u3 = u[tri.v[2]];
    const double ux = (u1 * (p2.y - p3.y) + u2 * (p3.y - p1.y) + u3 * (p1.y - p2.y)) / area2;
    const double uy = (u1 * (p3.x - p2.x) + u2 * (p1.x - p3.x) + u3 * (p2.x - p1.x)) / area2;

    double azimuthal = 0.0;
    const Vec2 mids[3] = {{0.5 * (p1.x + p2.x), 0.5 * (p1.y + p2.y)},
                          {0.5 * (p2.x + p3.x), 0.5 * (p2.y + p3.y)},
                          {0.5 * (p3.x + p1.x), 0.5 * (p3.y + p1.y)}};
    for (const Vec2& q : mids) {
        const double a = q.y * ux - q.x * uy;
        azimuthal += a * a;
    }
    return eps * (area * (ux * ux + uy * uy) +
                  omega * omega * area / 3.0 * azimuthal);
}

fem::RegionEps region_eps(const CapacitorConfig& config) {
    return {config.eps_out, config.eps_in, config.eps_wall};
}

}  // namespace

MeshGeometry CapacitorConfig::mesh_geometry() const {
    MeshGeometry geom = mesh;
    geom.cyl_size = r_cyl;
    geom.wall_size = wall;
    geom.boundary_size = R;
    return geom;
}

void CapacitorConfig::validate() const {
    if (omega < 0.0) throw ConfigError("config: omega must be non-negative");
    if (d <= 0.0) throw ConfigError("config: plate width must be positive");
    if (r_cyl <= 0.0) throw ConfigError("config: cylinder radius must be positive");
    if (!(wall > 0.0 && wall < r_cyl))
        throw ConfigError("config: need 0 < wall < cylinder radius");
    if (R <= r_cyl) throw ConfigError("config: outer radius must exceed the cylinder");
    if (eps_in <= 0.0 || eps_wall <= 0.0 || eps_out <= 0.0)
        throw ConfigError("config: permittivities must be positive");
    if (top_voltage <= bottom_voltage)
        throw ConfigError("config: top plate voltage must exceed the bottom");
    // plate overlap check (throws when alpha > pi)
    plate_half_width(r_cyl, d, fixed_cross_section ? 0.0 : omega);
    mesh_geometry().validate();
}

Solution solve_potential(const CapacitorConfig& config) {
    config.validate();
    auto mesh = std::make_shared<const Mesh2D>(generate_disk_mesh(config.mesh_geometry()));
    return solve_potential(config, std::move(mesh));
}

Solution solve_potential(const CapacitorConfig& config,
                         std::shared_ptr<const Mesh2D> mesh) {
    config.validate();
    Solution sol;
    sol.config = config;
    sol.mesh = std::move(mesh);
    sol.marking = mark_boundaries(*sol.mesh, config.r_cyl, config.d, config.omega,
                                  config.fixed_cross_section, config.plate_tol);
    const double beta = specfun::robin_coefficient(config.omega, config.R);
    const fem::LinearSystem system =
        fem::assemble(*sol.mesh, sol.marking, config.omega, region_eps(config), beta,
                      nullptr, {config.top_voltage, config.bottom_voltage});
    fem::SolveResult res =
        fem::solve_spd(system, config.solver_rel_tol, config.solver_max_iter);
    sol.field.values = std::move(res.u);
    sol.field.mesh = sol.mesh.get();
    sol.iterations = res.iterations;
    sol.residual = res.relative_residual;
    return sol;
}

EnergyReport energy_report(const Solution& sol, fem::Exec exec) {
    const Mesh2D& mesh = *sol.mesh;
    const fem::RegionEps eps = region_eps(sol.config);
    const double omega = sol.config.omega;
    const std::vector<double>& u = sol.field.values;
    const int n_tri = static_cast<int>(mesh.triangles.size());

    double by_region[4] = {0.0, 0.0, 0.0, 0.0};
    if (exec == fem::Exec::serial) {
        for (int t = 0; t < n_tri; ++t) {
            const Triangle& tri = mesh.triangles[t];
            by_region[tri.region] +=
                triangle_energy(mesh, tri, u, omega, eps.at(tri.region));
        }
    } else {
        std::vector<double> per_triangle(n_tri);
#pragma omp parallel for schedule(static)
        for (int t = 0; t < n_tri; ++t) {
            const Triangle& tri = mesh.triangles[t];
            per_triangle[t] = triangle_energy(mesh, tri, u, omega, eps.at(tri.region));
        }
        // fixed-order merge, identical to the serial accumulation order
        for (int t = 0; t < n_tri; ++t)
            by_region[mesh.triangles[t].region] += per_triangle[t];
    }

    EnergyReport report;
    report.E_out = by_region[kRegionOut];
    report.E_in = by_region[kRegionIn];
    report.E_wall = by_region[kRegionWall];
    report.E_total = report.E_in + report.E_wall + report.E_out;
    const double v = sol.config.top_voltage - sol.config.bottom_voltage;
    report.C_total = 2.0 * report.E_total / (v * v);
    report.C_in = 2.0 * report.E_in / (v * v);
    report.sensitivity = report.E_total > 0.0 ? report.E_in / report.E_total : 0.0;
    return report;
}

std::vector<double> project_energy_density(const Solution& sol) {
    const Mesh2D& mesh = *sol.mesh;
    const fem::RegionEps eps = region_eps(sol.config);
    const double omega = sol.config.omega;
    const std::vector<double>& u = sol.field.values;
    const int n = static_cast<int>(mesh.nodes.size());

    // consistent mass matrix M q = b with b_i = int density phi_i dx, both by
    // the midpoint rule (exact for the degree-2 integrands involved)
    fem::LinearSystem mass;
    mass.matrix = fem::build_pattern(mesh);
    mass.rhs.assign(n, 0.0);
    for (const Triangle& tri : mesh.triangles) {
        const Vec2& p1 = mesh.nodes[tri.v[0]];
        const Vec2& p2 = mesh.nodes[tri.v[1]];
        const Vec2& p3 = mesh.nodes[tri.v[2]];
        const double area2 =
            (p2.x - p1.x) * (p3.y - p1.y) - (p3.x - p1.x) * (p2.y - p1.y);
        const double area = 0.5 * area2;
        const double w = area / 12.0;
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b)
                mass.matrix.at(tri.v[a], tri.v[b]) += (a == b) ? 2.0 * w : w;

        const double u1 = u[tri.v[0]], u2 = u[tri.v[1]], u3 = u[tri.v[2]];
        const double ux =
            (u1 * (p2.y - p3.y) + u2 * (p3.y - p1.y) + u3 * (p1.y - p2.y)) / area2;
        const double uy =
            (u1 * (p3.x - p2.x) + u2 * (p1.x - p3.x) + u3 * (p2.x - p1.x)) / area2;
        const double grad2 = ux * ux + uy * uy;
        const Vec2 mids[3] = {{0.5 * (p1.x + p2.x), 0.5 * (p1.y + p2.y)},
                              {0.5 * (p2.x + p3.x), 0.5 * (p2.y + p3.y)},
                              {0.5 * (p3.x + p1.x), 0.5 * (p3.y + p1.y)}};
        // density at midpoint of edge (a, a+1); lambda = 1/2 at its ends
        for (int e = 0; e < 3; ++e) {
            const double az = mids[e].y * ux - mids[e].x * uy;
            const double density =
                eps.at(tri.region) * (grad2 + omega * omega * az * az);
            mass.rhs[tri.v[e]] += area / 3.0 * 0.5 * density;
            mass.rhs[tri.v[(e + 1) % 3]] += area / 3.0 * 0.5 * density;
        }
    }
    return fem::solve_spd(mass, 1e-12).u;
}

double omega_max(double d, double r) {
    if (d <= 0.0 || r <= 0.0)
        throw ConfigError("omega_max: width and radius must be positive");
    if (d >= kPi * r)
        throw ConfigError("omega_max: plates already overlap at omega = 0 (d >= pi r)");
    return std::sqrt(kPi * kPi / (d * d) - 1.0 / (r * r));
}

std::vector<SweepRow> sweep_omega(const CapacitorConfig& config,
                                  const std::vector<double>& nu_grid, int jobs) {
    config.validate();
    auto mesh = std::make_shared<const Mesh2D>(generate_disk_mesh(config.mesh_geometry()));
    std::vector<SweepRow> rows(nu_grid.size());
    const int n = static_cast<int>(nu_grid.size());
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, jobs)) if (jobs > 1)
    for (int i = 0; i < n; ++i) {
        SweepRow& row = rows[i];
        row.nu = nu_grid[i];
        try {
            CapacitorConfig point = config;
            point.omega = nu_to_omega(nu_grid[i], config.r_cyl);
            const Solution sol = solve_potential(point, mesh);
            const EnergyReport report = energy_report(sol);
            row.c_total = report.C_total;
            row.c_in = report.C_in;
            row.sensitivity = report.sensitivity;
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.error = e.what();
        }
    }
    return rows;
}

std::vector<std::pair<double, double>> profile_along_y(const Solution& sol, int n) {
    if (n < 2) throw ConfigError("profile_along_y: need at least two samples");
    std::vector<std::pair<double, double>> samples;
    samples.reserve(n);
    const double R = sol.config.R;
    for (int i = 0; i < n; ++i) {
        const double y = -R + (i + 0.5) * (2.0 * R / n);
        samples.emplace_back(y, fem::evaluate(sol.field, 0.0, y));
    }
    return samples;
}

}  // namespace spiralcap
