#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "spiralcap/fem.hpp"
#include "spiralcap/mesh.hpp"

namespace spiralcap {

/// Full problem description of one spiral-capacitor solve. Lengths are in
/// units of the cylinder radius, energies in the arbitrary units of
/// int eps |grad u|^2 dx (no 1/(8 pi); physical Gaussian-units energy is
/// this divided by 8 pi).
struct CapacitorConfig {
    double omega = 2.0 * 3.14159265358979323846 * 0.5;  // rad per unit length
    double d = 0.2;          // plate width along the wound stripe
    double r_cyl = 1.0;      // cylinder radius
    double wall = 0.1;       // wall thickness
    double R = 5.0;          // outer truncation radius
    double eps_in = 1.0;     // air (water: 81)
    double eps_wall = 10.0;  // glass
    double eps_out = 1.0;
    double top_voltage = 0.5;
    double bottom_voltage = -0.5;
    bool fixed_cross_section = false;  // d taken directly as cross-section width
    MeshGeometry mesh;       // density knobs; radii follow r_cyl/wall/R
    double plate_tol = 1e-3;
    double solver_rel_tol = 1e-10;
    int solver_max_iter = 0;  // 0 = solver default

    /// Effective mesh geometry with the radius fields synced to this config.
    MeshGeometry mesh_geometry() const;
    void validate() const;
};

/// loops-per-radius -> radians per unit length
inline double nu_to_omega(double nu, double r_cyl) {
    return 2.0 * 3.14159265358979323846 * nu / r_cyl;
}

struct Solution {
    fem::ScalarField field;
    std::shared_ptr<const Mesh2D> mesh;
    BoundaryMarking marking;
    CapacitorConfig config;
    int iterations = 0;
    double residual = 0.0;
};

struct EnergyReport {
    double E_in = 0.0;
    double E_wall = 0.0;
    double E_out = 0.0;
    double E_total = 0.0;
    double C_total = 0.0;     // 2 E_total / V^2
    double C_in = 0.0;        // 2 E_in / V^2
    double sensitivity = 0.0; // E_in / E_total
};

/// Build (or reuse) the mesh, mark the plates, assemble with the Robin
/// far-field coefficient and f = 0, and solve for the potential slice.
Solution solve_potential(const CapacitorConfig& config);
Solution solve_potential(const CapacitorConfig& config,
                         std::shared_ptr<const Mesh2D> mesh);

/// Per-region stored energy of a solved field,
///   E_t = sum_{T in t} int eps_t (|grad u|^2 + w^2 (y u_x - x u_y)^2) dx,
/// by the same midpoint quadrature as assembly, plus the derived
/// capacitances and the sensitivity ratio. Exec::parallel integrates
/// triangles concurrently with a fixed-order merge (bitwise independent of
/// thread count); Exec::serial is the reference loop.
EnergyReport energy_report(const Solution& sol,
                           fem::Exec exec = fem::Exec::parallel);

/// L2 projection of the energy density onto the P1 space (consistent mass
/// matrix); exposed for VTK export only.
std::vector<double> project_energy_density(const Solution& sol);

/// Winding frequency at which the two plates meet (alpha = pi):
/// sqrt(pi^2/d^2 - 1/r^2). Throws ConfigError for d >= pi r.
double omega_max(double d, double r);

struct SweepRow {
    double nu = 0.0;
    double c_total = 0.0;
    double c_in = 0.0;
    double sensitivity = 0.0;
    bool ok = false;
    std::string error;
};

/// Solve once per grid value nu (omega = 2 pi nu / r_cyl). Rows keep grid
/// order; per-point failures are recorded in the row and the sweep
/// continues. jobs > 1 solves grid points concurrently.
std::vector<SweepRow> sweep_omega(const CapacitorConfig& config,
                                  const std::vector<double>& nu_grid,
                                  int jobs = 1);

/// Potential profile along the Y axis: n midpoint samples of u(0, y) for
/// y in (-R, R); odd n places a sample exactly at y = 0.
std::vector<std::pair<double, double>> profile_along_y(const Solution& sol, int n);

}  // namespace spiralcap
