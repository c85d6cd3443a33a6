#include <algorithm>
#include <array>
#include <cmath>
#include <memory>

#include "spiralcap/errors.hpp"
#include "spiralcap/fem.hpp"

namespace spiralcap::fem {

namespace {

// local 3x3 stiffness and 3-entry load of one P1 triangle; quadrature at
// the three edge midpoints (degree-2 exact, and K varies quadratically)
struct ElementContribution {
    std::array<double, 9> stiffness;
    std::array<double, 3> load;
};

ElementContribution element_matrix(const Mesh2D& mesh, const Triangle& tri,
                                   double omega, double eps, const SourceFn& f) {
    const Vec2& p1 = mesh.nodes[tri.v[0]];
    const Vec2& p2 = mesh.nodes[tri.v[1]];
    const Vec2& p3 = mesh.nodes[tri.v[2]];

    const double area2 = (p2.x - p1.x) * (p3.y - p1.y) - (p3.x - p1.x) * (p2.y - p1.y);
    const double area = 0.5 * area2;

    // constant P1 gradients: grad lambda_a = (b_a, c_a) / (2 area)
    const std::array<double, 3> b = {p2.y - p3.y, p3.y - p1.y, p1.y - p2.y};
    const std::array<double, 3> c = {p3.x - p2.x, p1.x - p3.x, p2.x - p1.x};

    const std::array<Vec2, 3> mid = {
        Vec2{0.5 * (p1.x + p2.x), 0.5 * (p1.y + p2.y)},
        Vec2{0.5 * (p2.x + p3.x), 0.5 * (p2.y + p3.y)},
        Vec2{0.5 * (p3.x + p1.x), 0.5 * (p3.y + p1.y)}};

    // mean of the anisotropy tensor over the midpoint rule
    AnisotropyTensor mean{0.0, 0.0, 0.0};
    for (const Vec2& q : mid) {
        const AnisotropyTensor k = anisotropy_tensor(q.x, q.y, omega);
        mean.kxx += k.kxx / 3.0;
        mean.kxy += k.kxy / 3.0;
        mean.kyy += k.kyy / 3.0;
    }

    ElementContribution out;
    const double scale = eps / (4.0 * area);  // (2A)^2 in gradients, times area
    out.load = {0.0, 0.0, 0.0};
    for (int a = 0; a < 3; ++a) {
        const double kx = mean.kxx * b[a] + mean.kxy * c[a];
        const double ky = mean.kxy * b[a] + mean.kyy * c[a];
        // fill the upper triangle and mirror so the matrix is exactly symmetric
        for (int bb = a; bb < 3; ++bb) {
            const double entry = scale * (kx * b[bb] + ky * c[bb]);
            out.stiffness[3 * a + bb] = entry;
            out.stiffness[3 * bb + a] = entry;
        }
    }

    if (f) {
        // lambda values at the edge midpoints: (1/2, 1/2, 0) patterns
        const double f12 = f(mid[0].x, mid[0].y);
        const double f23 = f(mid[1].x, mid[1].y);
        const double f31 = f(mid[2].x, mid[2].y);
        const double w = area / 3.0 * 0.5;
        out.load = {w * (f12 + f31), w * (f12 + f23), w * (f23 + f31)};
    }
    return out;
}

}  // namespace

CsrMatrix build_pattern(const Mesh2D& mesh) {
    const int n = static_cast<int>(mesh.nodes.size());
    std::vector<std::vector<int>> neighbors(n);
    for (int i = 0; i < n; ++i) neighbors[i].push_back(i);
    for (const Triangle& tri : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            const int a = tri.v[e];
            const int b = tri.v[(e + 1) % 3];
            neighbors[a].push_back(b);
            neighbors[b].push_back(a);
        }
    }
    CsrMatrix m;
    m.n = n;
    m.row_ptr.assign(n + 1, 0);
    for (int i = 0; i < n; ++i) {
        auto& nb = neighbors[i];
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        m.row_ptr[i + 1] = m.row_ptr[i] + static_cast<int>(nb.size());
    }
    m.col.reserve(m.row_ptr[n]);
    for (int i = 0; i < n; ++i)
        m.col.insert(m.col.end(), neighbors[i].begin(), neighbors[i].end());
    m.val.assign(m.col.size(), 0.0);
    return m;
}

namespace {

void scatter(CsrMatrix& matrix, std::vector<double>& rhs, const Triangle& tri,
             const ElementContribution& elem, bool has_load) {
    for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b)
            matrix.at(tri.v[a], tri.v[b]) += elem.stiffness[3 * a + b];
        if (has_load) rhs[tri.v[a]] += elem.load[a];
    }
}

void apply_dirichlet(LinearSystem& system) {
    const int n = system.matrix.n;
    std::vector<char> fixed(n, 0);
    for (const auto& [dof, value] : system.constraints) {
        if (dof < 0 || dof >= n)
            throw ConfigError("assemble: Dirichlet dof out of range");
        fixed[dof] = 1;
    }
    CsrMatrix& m = system.matrix;
    for (const auto& [dof, value] : system.constraints) {
        for (int idx = m.row_ptr[dof]; idx < m.row_ptr[dof + 1]; ++idx) {
            const int j = m.col[idx];
            if (j == dof) {
                m.val[idx] = 1.0;
                continue;
            }
            if (!fixed[j]) {
                // move the known column to the right-hand side, then zero
                // the symmetric pair of entries
                system.rhs[j] -= m.val[idx] * value;
                m.at(j, dof) = 0.0;
            }
            m.val[idx] = 0.0;
        }
        system.rhs[dof] = value;
    }
}

}  // namespace

void CsrMatrix::multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int idx = row_ptr[i]; idx < row_ptr[i + 1]; ++idx)
            s += val[idx] * x[col[idx]];
        y[i] = s;
    }
}

double& CsrMatrix::at(int row, int column) {
    const auto begin = col.begin() + row_ptr[row];
    const auto end = col.begin() + row_ptr[row + 1];
    const auto it = std::lower_bound(begin, end, column);
    if (it == end || *it != column)
        throw ConfigError("CsrMatrix: entry outside the assembled pattern");
    return val[it - col.begin()];
}

double CsrMatrix::get(int row, int column) const {
    const auto begin = col.begin() + row_ptr[row];
    const auto end = col.begin() + row_ptr[row + 1];
    const auto it = std::lower_bound(begin, end, column);
    return (it != end && *it == column) ? val[it - col.begin()] : 0.0;
}

double CsrMatrix::max_asymmetry() const {
    double worst = 0.0;
    for (int i = 0; i < n; ++i)
        for (int idx = row_ptr[i]; idx < row_ptr[i + 1]; ++idx) {
            const int j = col[idx];
            if (j < i) continue;
            worst = std::max(worst, std::abs(val[idx] - get(j, i)));
        }
    return worst;
}

double RegionEps::at(int region_tag) const {
    switch (region_tag) {
        case kRegionOut: return out;
        case kRegionIn: return in;
        case kRegionWall: return wall;
        default:
            throw ConfigError("unknown region tag " + std::to_string(region_tag));
    }
}

LinearSystem assemble(const Mesh2D& mesh, double omega, const RegionEps& eps,
                      double beta,
                      const std::vector<std::array<int, 2>>& robin_edges,
                      const SourceFn& f,
                      const std::vector<std::pair<int, double>>& dirichlet,
                      Exec exec) {
    if (beta < 0.0) throw ConfigError("assemble: beta must be non-negative");

    // validate tags up front; the element loop must not throw once parallel
    for (const Triangle& tri : mesh.triangles) eps.at(tri.region);

    LinearSystem system;
    system.matrix = build_pattern(mesh);
    system.rhs.assign(system.matrix.n, 0.0);
    const bool has_load = static_cast<bool>(f);
    const int n_tri = static_cast<int>(mesh.triangles.size());

    if (exec == Exec::serial) {
        // reference path: compute and scatter one element at a time
        for (int t = 0; t < n_tri; ++t) {
            const Triangle& tri = mesh.triangles[t];
            const ElementContribution elem =
                element_matrix(mesh, tri, omega, eps.at(tri.region), f);
            scatter(system.matrix, system.rhs, tri, elem, has_load);
        }
    } else {
        // element matrices in parallel, then a serial merge in fixed element
        // order: every CSR slot receives its contributions in the same order
        // as the serial path, so the sums are bitwise identical
        const auto elems = std::make_unique_for_overwrite<ElementContribution[]>(n_tri);
        std::exception_ptr failure;
#pragma omp parallel for schedule(static)
        for (int t = 0; t < n_tri; ++t) {
            try {
                const Triangle& tri = mesh.triangles[t];
                elems[t] = element_matrix(mesh, tri, omega, eps.at(tri.region), f);
            } catch (...) {
#pragma omp critical
                failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);
        for (int t = 0; t < n_tri; ++t)
            scatter(system.matrix, system.rhs, mesh.triangles[t], elems[t], has_load);
    }

    if (beta > 0.0) {
        // two-point Gauss on each Robin edge
        constexpr double g = 0.57735026918962576451;  // 1/sqrt(3)
        for (const auto& edge : robin_edges) {
            const Vec2& a = mesh.nodes[edge[0]];
            const Vec2& b = mesh.nodes[edge[1]];
            const double len = std::hypot(b.x - a.x, b.y - a.y);
            double mass[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
            for (double t : {-g, g}) {
                const double phi[2] = {0.5 * (1.0 - t), 0.5 * (1.0 + t)};
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        mass[i][j] += 0.5 * len * phi[i] * phi[j];
            }
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    system.matrix.at(edge[i], edge[j]) += beta * mass[i][j];
        }
    }

    system.constraints = dirichlet;
    std::sort(system.constraints.begin(), system.constraints.end());
    apply_dirichlet(system);
    return system;
}

LinearSystem assemble(const Mesh2D& mesh, const BoundaryMarking& marking,
                      double omega, const RegionEps& eps, double beta,
                      const SourceFn& f,
                      std::pair<double, double> plate_voltages, Exec exec) {
    std::vector<std::pair<int, double>> dirichlet;
    dirichlet.reserve(marking.top_nodes.size() + marking.bottom_nodes.size());
    for (int dof : marking.top_nodes) dirichlet.emplace_back(dof, plate_voltages.first);
    for (int dof : marking.bottom_nodes) dirichlet.emplace_back(dof, plate_voltages.second);
    return assemble(mesh, omega, eps, beta, marking.outer_edges, f, dirichlet, exec);
}

}  // namespace spiralcap::fem
