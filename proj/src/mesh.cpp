#include "spiralcap/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "spiralcap/errors.hpp"

namespace spiralcap {

namespace {

constexpr double kPi = 3.14159265358979323846264338;

// rings of one radial band, graded from spacing h_lo at radius a to h_hi
// at radius b; the band's end radius is placed exactly
void append_band(std::vector<double>& radii, double a, double b, double h_lo,
                 double h_hi) {
    const int n = std::max(1, static_cast<int>(std::ceil(2.0 * (b - a) / (h_lo + h_hi))));
    std::vector<double> w(n);
    for (int j = 0; j < n; ++j) w[j] = h_lo + (h_hi - h_lo) * (j + 0.5) / n;
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    double cum = 0.0;
    for (int j = 0; j < n - 1; ++j) {
        cum += w[j];
        radii.push_back(a + (b - a) * cum / total);
    }
    radii.push_back(b);
}

std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

double Mesh2D::total_area() const {
    double area = 0.0;
    for (int t = 0; t < static_cast<int>(triangles.size()); ++t)
        area += signed_area(t);
    return area;
}

void MeshGeometry::validate() const {
    if (!(wall_size > 0.0 && wall_size < cyl_size))
        throw ConfigError("mesh geometry: need 0 < wall_size < cyl_size");
    if (!(cyl_size + d_size < boundary_size))
        throw ConfigError("mesh geometry: need cyl_size + d_size < boundary_size");
    if (sectors < 16 || sectors % 4 != 0)
        throw ConfigError("mesh geometry: sectors must be >= 16 and divisible by 4");
    if (!(center_size > 0.0 && center_size < cyl_size - wall_size))
        throw ConfigError("mesh geometry: need 0 < center_size < cyl_size - wall_size");
    if (d_size <= 0.0) throw ConfigError("mesh geometry: d_size must be positive");
    if (center_density <= 0.0 || cyl_density <= 0.0 || out_density <= 0.0 ||
        near_cyl_density <= 0.0)
        throw ConfigError("mesh geometry: densities must be positive");
}

Mesh2D generate_disk_mesh(const MeshGeometry& geom) {
    geom.validate();

    const double inner_wall = geom.cyl_size - geom.wall_size;
    const double near_out = geom.cyl_size + geom.d_size;

    std::vector<double> radii;
    append_band(radii, 0.0, geom.center_size, geom.center_density, geom.center_density);
    append_band(radii, geom.center_size, inner_wall, geom.center_density,
                geom.near_cyl_density);
    append_band(radii, inner_wall, geom.cyl_size, geom.near_cyl_density,
                geom.cyl_density);
    append_band(radii, geom.cyl_size, near_out, geom.cyl_density,
                geom.near_cyl_density);
    append_band(radii, near_out, geom.boundary_size, geom.near_cyl_density,
                geom.out_density);

    const int S = geom.sectors;
    const int quarter = S / 4;

    // first-quadrant angle table; the other quadrants are sign/swap mirrors
    // of it, so reflected nodes have bitwise-identical coordinates
    std::vector<double> ct(quarter + 1), st(quarter + 1);
    for (int k = 0; k <= quarter; ++k) {
        ct[k] = std::cos(2.0 * kPi * k / S);
        st[k] = std::sin(2.0 * kPi * k / S);
    }
    ct[0] = 1.0;
    st[0] = 0.0;
    ct[quarter] = 0.0;
    st[quarter] = 1.0;

    const auto unit_point = [&](int j) -> Vec2 {
        j %= S;
        if (j <= quarter) return {ct[j], st[j]};
        if (j <= 2 * quarter) return {-ct[2 * quarter - j], st[2 * quarter - j]};
        if (j <= 3 * quarter) return {-ct[j - 2 * quarter], -st[j - 2 * quarter]};
        return {ct[S - j], -st[S - j]};
    };

    Mesh2D mesh;
    const int rings = static_cast<int>(radii.size());
    mesh.nodes.reserve(1 + static_cast<std::size_t>(rings) * S);
    mesh.nodes.push_back({0.0, 0.0});
    for (int i = 0; i < rings; ++i) {
        const double r = radii[i];
        for (int j = 0; j < S; ++j) {
            const Vec2 u = unit_point(j);
            mesh.nodes.push_back({r * u.x, r * u.y});
        }
    }

    const auto node_id = [S](int ring, int j) { return 1 + ring * S + (j % S); };
    const auto region_of = [&](double mid_radius) {
        if (mid_radius < inner_wall) return kRegionIn;
        if (mid_radius <= geom.cyl_size) return kRegionWall;
        return kRegionOut;
    };

    // fan around the origin
    const int fan_region = region_of(0.5 * radii[0]);
    for (int j = 0; j < S; ++j)
        mesh.triangles.push_back({{0, node_id(0, j), node_id(0, j + 1)}, fan_region});

    // annulus bands, diagonals alternating with sector parity so the
    // triangle set is invariant under both mirror reflections
    for (int i = 0; i + 1 < rings; ++i) {
        const int region = region_of(0.5 * (radii[i] + radii[i + 1]));
        for (int j = 0; j < S; ++j) {
            // counter-clockwise quad: inner j, outer j, outer j+1, inner j+1
            const int a = node_id(i, j);
            const int d = node_id(i + 1, j);
            const int c = node_id(i + 1, j + 1);
            const int b = node_id(i, j + 1);
            if (j % 2 == 0) {
                mesh.triangles.push_back({{a, d, c}, region});
                mesh.triangles.push_back({{a, c, b}, region});
            } else {
                mesh.triangles.push_back({{a, d, b}, region});
                mesh.triangles.push_back({{d, c, b}, region});
            }
        }
    }

    mesh.boundary_edges.reserve(S);
    for (int j = 0; j < S; ++j)
        mesh.boundary_edges.push_back({node_id(rings - 1, j), node_id(rings - 1, j + 1)});

    return mesh;
}

double plate_half_width(double r, double d, double omega) {
    if (r <= 0.0) throw ConfigError("plate_half_width: radius must be positive");
    if (d <= 0.0) throw ConfigError("plate_half_width: plate width must be positive");
    const double alpha = d / r * std::sqrt(1.0 + omega * omega * r * r);
    if (alpha > kPi * (1.0 + 1e-12))
        throw ConfigError("plate_half_width: plates overlap (alpha > pi)");
    return r * std::sin(0.5 * std::min(alpha, kPi));
}

BoundaryMarking mark_boundaries(const Mesh2D& mesh, double r, double d,
                                double omega, bool fixed_cross_section,
                                double tol) {
    const double max_x = fixed_cross_section ? plate_half_width(r, d, 0.0)
                                             : plate_half_width(r, d, omega);
    BoundaryMarking marking;
    for (int i = 0; i < static_cast<int>(mesh.nodes.size()); ++i) {
        const Vec2& p = mesh.nodes[i];
        if (std::abs(std::hypot(p.x, p.y) - r) > tol) continue;
        if (std::abs(p.x) > max_x) continue;
        if (p.y > 0.0)
            marking.top_nodes.push_back(i);
        else if (p.y < 0.0)
            marking.bottom_nodes.push_back(i);
    }
    if (marking.top_nodes.empty() || marking.bottom_nodes.empty())
        throw ConfigError("mark_boundaries: no plate nodes found (mesh too coarse for this plate width)");
    marking.outer_edges = mesh.boundary_edges;
    return marking;
}

MeshDiagnostics validate_mesh(const Mesh2D& mesh) {
    MeshDiagnostics diag;
    const int n_nodes = static_cast<int>(mesh.nodes.size());

    for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
        const Triangle& tri = mesh.triangles[t];
        bool dangling = false;
        for (int v : tri.v) {
            if (v < 0 || v >= n_nodes) {
                ++diag.dangling_references;
                dangling = true;
            }
        }
        if (dangling) {
            diag.messages.push_back("triangle " + std::to_string(t) +
                                    " references a missing node");
            continue;
        }
        if (mesh.signed_area(t) <= 0.0) {
            ++diag.orientation_violations;
            diag.messages.push_back("triangle " + std::to_string(t) +
                                    " is not counter-clockwise");
        }
        if (tri.region != kRegionOut && tri.region != kRegionIn &&
            tri.region != kRegionWall) {
            ++diag.bad_region_tags;
            diag.messages.push_back("triangle " + std::to_string(t) +
                                    " carries unknown region tag " +
                                    std::to_string(tri.region));
        }
    }

    // duplicate nodes within 1e-12, sweep over x-sorted order
    std::vector<int> order(n_nodes);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return mesh.nodes[a].x < mesh.nodes[b].x;
    });
    for (int i = 0; i < n_nodes; ++i) {
        for (int j = i + 1; j < n_nodes; ++j) {
            const Vec2& a = mesh.nodes[order[i]];
            const Vec2& b = mesh.nodes[order[j]];
            if (b.x - a.x > 1e-12) break;
            if (std::abs(b.y - a.y) <= 1e-12) {
                ++diag.duplicate_nodes;
                diag.messages.push_back("nodes " + std::to_string(order[i]) + " and " +
                                        std::to_string(order[j]) + " coincide");
            }
        }
    }

    // edge incidence: interior edges are shared by exactly two triangles,
    // boundary edges by one, and the one-owner set must equal boundary_edges
    std::unordered_map<std::uint64_t, int> incidence;
    for (const Triangle& tri : mesh.triangles) {
        for (int e = 0; e < 3; ++e) {
            const int a = tri.v[e];
            const int b = tri.v[(e + 1) % 3];
            if (a < 0 || a >= n_nodes || b < 0 || b >= n_nodes) continue;
            ++incidence[edge_key(a, b)];
        }
    }
    std::vector<std::uint64_t> lonely;
    for (const auto& [key, count] : incidence) {
        if (count > 2) {
            ++diag.non_manifold_edges;
            diag.messages.push_back("edge shared by " + std::to_string(count) +
                                    " triangles");
        } else if (count == 1) {
            lonely.push_back(key);
        }
    }
    std::vector<std::uint64_t> declared;
    declared.reserve(mesh.boundary_edges.size());
    for (const auto& e : mesh.boundary_edges) declared.push_back(edge_key(e[0], e[1]));
    std::sort(lonely.begin(), lonely.end());
    std::sort(declared.begin(), declared.end());
    diag.boundary_edges_consistent = (lonely == declared);
    if (!diag.boundary_edges_consistent)
        diag.messages.push_back("boundary_edges do not match the single-owner edge set");

    return diag;
}

}  // namespace spiralcap
