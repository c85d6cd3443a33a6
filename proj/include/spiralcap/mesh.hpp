#pragma once

#include <array>
#include <string>
#include <vector>

namespace spiralcap {

// region tags, fixed by the mesh file convention
inline constexpr int kRegionOut = 1;
inline constexpr int kRegionIn = 2;
inline constexpr int kRegionWall = 3;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Triangle {
    std::array<int, 3> v{};  // node ids, counter-clockwise
    int region = 0;          // 1 out, 2 in, 3 wall
};

/// Triangulated disk cross-section with region tags and the edge set of
/// the outer truncation circle.
struct Mesh2D {
    std::vector<Vec2> nodes;
    std::vector<Triangle> triangles;
    std::vector<std::array<int, 2>> boundary_edges;

    double signed_area(int t) const {
        const auto& tri = triangles[t];
        const Vec2& a = nodes[tri.v[0]];
        const Vec2& b = nodes[tri.v[1]];
        const Vec2& c = nodes[tri.v[2]];
        return 0.5 * ((b.x - a.x) * (c.y - a.y) - (c.x - a.x) * (b.y - a.y));
    }

    double total_area() const;
};

/// Knobs of the native structured polar mesh. Radii are in units of the
/// cylinder radius; densities are target radial spacings at the band
/// boundaries they are named after.
struct MeshGeometry {
    double center_size = 0.2;
    double cyl_size = 1.0;
    double wall_size = 0.1;
    double d_size = 0.1;
    double boundary_size = 5.0;
    int sectors = 720;  // angular divisions, >= 16 and divisible by 4
    double center_density = 0.1;
    double cyl_density = 0.01;
    double out_density = 0.25;
    double near_cyl_density = 0.02;

    /// Throws ConfigError when any geometric invariant is violated.
    void validate() const;
};

/// Node sets carrying the Dirichlet plate data plus the Robin edge set.
struct BoundaryMarking {
    std::vector<int> top_nodes;     // +V/2 plate
    std::vector<int> bottom_nodes;  // -V/2 plate
    std::vector<std::array<int, 2>> outer_edges;
};

/// Structured polar disk mesh: concentric rings at radii including exactly
/// {center_size, cyl_size - wall_size, cyl_size, cyl_size + d_size,
/// boundary_size}, graded spacing inside each band, a uniform angular grid,
/// and a triangle fan around the origin node. Node placement is mirrored
/// quadrant-wise so the node set is bitwise symmetric under x -> -x and
/// y -> -y, which the solver's symmetry contract relies on.
Mesh2D generate_disk_mesh(const MeshGeometry& geom);

/// Maximum |x| occupied by a plate of width d (measured along the wound
/// stripe) in the cross-section: r sin(alpha/2) with
/// alpha = (d/r) sqrt(1 + omega^2 r^2). Throws ConfigError when the two
/// plates would overlap (alpha > pi).
double plate_half_width(double r, double d, double omega);

/// Select the Dirichlet plate nodes on the circle of radius r and expose
/// the outer circle as the Robin edge set. With fixed_cross_section the
/// sqrt(1 + omega^2 r^2) stretch factor is dropped and d is interpreted
/// directly as the cross-section width.
BoundaryMarking mark_boundaries(const Mesh2D& mesh, double r, double d,
                                double omega, bool fixed_cross_section = false,
                                double tol = 1e-3);

/// Structural diagnostics; `pass` is true when no check found a defect.
struct MeshDiagnostics {
    int orientation_violations = 0;
    int duplicate_nodes = 0;
    int bad_region_tags = 0;
    int dangling_references = 0;
    int non_manifold_edges = 0;
    bool boundary_edges_consistent = true;
    std::vector<std::string> messages;

    bool pass() const {
        return orientation_violations == 0 && duplicate_nodes == 0 &&
               bad_region_tags == 0 && dangling_references == 0 &&
               non_manifold_edges == 0 && boundary_edges_consistent;
    }
};

MeshDiagnostics validate_mesh(const Mesh2D& mesh);

}  // namespace spiralcap
