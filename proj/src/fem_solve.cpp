#include <cmath>
#include <stdexcept>

#include "spiralcap/errors.hpp"
#include "spiralcap/fem.hpp"

namespace spiralcap::fem {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

}  // namespace

SolveResult solve_spd(const LinearSystem& system, double rel_tol, int max_iter) {
    const CsrMatrix& A = system.matrix;
    const int n = A.n;
    if (max_iter <= 0) max_iter = 50 * static_cast<int>(std::ceil(std::sqrt(n)));

    std::vector<double> diag(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int idx = A.row_ptr[i]; idx < A.row_ptr[i + 1]; ++idx)
            if (A.col[idx] == i) diag[i] = A.val[idx];
    for (int i = 0; i < n; ++i)
        if (diag[i] == 0.0)
            throw SingularError("solve_spd: zero diagonal at dof " + std::to_string(i));

    SolveResult result;
    result.u.assign(n, 0.0);
    // constrained rows are unit-diagonal with rhs = value; starting from the
    // fixed values makes their residual exactly zero, so CG never moves them
    for (const auto& [dof, value] : system.constraints) result.u[dof] = value;

    std::vector<double> r(n), z(n), p(n), q(n);
    A.multiply(result.u, r);
    for (int i = 0; i < n; ++i) r[i] = system.rhs[i] - r[i];

    const double scale = norm(system.rhs);
    double rnorm = norm(r);
    result.residual_history.push_back(rnorm);
    if (scale == 0.0 || rnorm <= rel_tol * scale) {
        result.relative_residual = (scale == 0.0) ? 0.0 : rnorm / scale;
        return result;
    }

    for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
    p = z;
    double rho = dot(r, z);

    for (int it = 1; it <= max_iter; ++it) {
        A.multiply(p, q);
        const double pq = dot(p, q);
        if (pq <= 0.0)
            throw SingularError("solve_spd: matrix is not positive definite");
        const double alpha = rho / pq;
        result.energy_error_drops.push_back(alpha * rho);
        for (int i = 0; i < n; ++i) {
            result.u[i] += alpha * p[i];
            r[i] -= alpha * q[i];
        }
        rnorm = norm(r);
        result.residual_history.push_back(rnorm);
        result.iterations = it;
        if (rnorm <= rel_tol * scale) {
            result.relative_residual = rnorm / scale;
            return result;
        }
        for (int i = 0; i < n; ++i) z[i] = r[i] / diag[i];
        const double rho_next = dot(r, z);
        const double beta = rho_next / rho;
        rho = rho_next;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    throw SolverError("solve_spd: no convergence after " + std::to_string(max_iter) +
                          " iterations (relative residual " +
                          std::to_string(rnorm / scale) + ")",
                      rnorm / scale);
}

double evaluate(const ScalarField& field, double x, double y) {
    const Mesh2D& mesh = *field.mesh;
    for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const Triangle& tri = mesh.triangles[t];
        const Vec2& a = mesh.nodes[tri.v[0]];
        const Vec2& b = mesh.nodes[tri.v[1]];
        const Vec2& c = mesh.nodes[tri.v[2]];
        const double area2 = (b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y);
        const double l1 = ((b.x - x) * (c.y - y) - (c.x - x) * (b.y - y)) / area2;
        const double l2 = ((c.x - x) * (a.y - y) - (a.x - x) * (c.y - y)) / area2;
        const double l3 = 1.0 - l1 - l2;
        const double slack = -1e-12;
        if (l1 >= slack && l2 >= slack && l3 >= slack) {
            return l1 * field.values[tri.v[0]] + l2 * field.values[tri.v[1]] +
                   l3 * field.values[tri.v[2]];
        }
    }
    throw std::domain_error("evaluate: point outside the mesh");
}

}  // namespace spiralcap::fem
