#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "spiralcap/mesh.hpp"

namespace spiralcap::fem {

/// Symmetric 2x2 coefficient matrix of the winding-reduced operator at one
/// point: [[1 + w^2 y^2, -w^2 x y], [-w^2 x y, 1 + w^2 x^2]]. Eigenvalues
/// are {1, 1 + w^2 (x^2 + y^2)}, so it is positive definite everywhere.
struct AnisotropyTensor {
    double kxx = 1.0;
    double kxy = 0.0;
    double kyy = 1.0;

    double det() const { return kxx * kyy - kxy * kxy; }
};

inline AnisotropyTensor anisotropy_tensor(double x, double y, double omega) {
    const double w2 = omega * omega;
    return {1.0 + w2 * y * y, -w2 * x * y, 1.0 + w2 * x * x};
}

/// Compressed-row sparse matrix, symmetric by construction.
struct CsrMatrix {
    int n = 0;
    std::vector<int> row_ptr;
    std::vector<int> col;
    std::vector<double> val;

    void multiply(const std::vector<double>& x, std::vector<double>& y) const;
    double& at(int row, int column);  // existing pattern entries only
    double get(int row, int column) const;  // zero outside the pattern
    double max_asymmetry() const;
};

/// Relative permittivity per region tag.
struct RegionEps {
    double out = 1.0;
    double in = 1.0;
    double wall = 1.0;

    /// Throws ConfigError for a tag outside {1, 2, 3}.
    double at(int region_tag) const;
};

struct LinearSystem {
    CsrMatrix matrix;
    std::vector<double> rhs;
    std::vector<std::pair<int, double>> constraints;  // dof -> fixed value
};

enum class Exec { serial, parallel };

using SourceFn = std::function<double(double, double)>;

/// CSR sparsity of the P1 node-adjacency graph (diagonal included).
CsrMatrix build_pattern(const Mesh2D& mesh);

/// Galerkin assembly of
///   a(u,v) = sum_T int eps (grad v)^T K(x, omega) (grad u) dx
///          + beta sum_robin_edges int u v ds
///   L(v)   = sum_T int f v dx
/// with P1 elements, three-point edge-midpoint quadrature per triangle
/// (exact for the quadratically varying K) and two-point Gauss per Robin
/// edge. Dirichlet constraints are applied by symmetric elimination.
///
/// Exec::parallel computes element matrices concurrently and merges them
/// in a fixed element order, so the result is bitwise-independent of the
/// thread count; Exec::serial is the single-pass reference used for
/// testing and benchmarking.
LinearSystem assemble(const Mesh2D& mesh, double omega, const RegionEps& eps,
                      double beta,
                      const std::vector<std::array<int, 2>>& robin_edges,
                      const SourceFn& f,
                      const std::vector<std::pair<int, double>>& dirichlet,
                      Exec exec = Exec::parallel);

/// Spec-shaped overload: plate marking plus (top, bottom) plate voltages.
LinearSystem assemble(const Mesh2D& mesh, const BoundaryMarking& marking,
                      double omega, const RegionEps& eps, double beta,
                      const SourceFn& f,
                      std::pair<double, double> plate_voltages,
                      Exec exec = Exec::parallel);

struct SolveResult {
    std::vector<double> u;
    int iterations = 0;
    double relative_residual = 0.0;
    std::vector<double> residual_history;
    // per-iteration drop of the squared A-norm error, alpha_k * rho_{k-1};
    // strictly positive for an SPD system, which is the monotone-descent
    // guarantee CG actually provides (the 2-norm residual may wiggle)
    std::vector<double> energy_error_drops;
};

/// Jacobi-preconditioned conjugate gradients. Constrained dofs keep their
/// fixed values exactly. max_iter = 0 selects the default 50 sqrt(n).
/// Throws SingularError on a zero diagonal and SolverError (carrying the
/// final residual) when the iteration cap is reached.
SolveResult solve_spd(const LinearSystem& system, double rel_tol = 1e-10,
                      int max_iter = 0);

/// Nodal P1 field bound to its mesh.
struct ScalarField {
    std::vector<double> values;
    const Mesh2D* mesh = nullptr;
};

/// Barycentric interpolation inside the containing triangle (exhaustive
/// search). Throws std::domain_error for points outside the mesh hull.
double evaluate(const ScalarField& field, double x, double y);

}  // namespace spiralcap::fem
