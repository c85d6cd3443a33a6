#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "spiralcap/errors.hpp"
#include "spiralcap/mesh.hpp"

using namespace spiralcap;

namespace {

constexpr double kPi = 3.14159265358979323846;

MeshGeometry coarse_geometry() {
    MeshGeometry geom;
    geom.sectors = 64;
    geom.center_density = 0.2;
    geom.cyl_density = 0.05;
    geom.near_cyl_density = 0.1;
    geom.out_density = 0.5;
    return geom;
}

}  // namespace

TEST_CASE("generated mesh keeps every node on a ring radius") {
    MeshGeometry geom = coarse_geometry();
    geom.sectors = 16;
    const Mesh2D mesh = generate_disk_mesh(geom);

    std::set<double> ring_r2;
    for (const Vec2& p : mesh.nodes) ring_r2.insert(p.x * p.x + p.y * p.y);
    // group radii: every node's r^2 must be within 1e-12 of some ring value
    std::vector<double> rings(ring_r2.begin(), ring_r2.end());
    std::vector<double> distinct;
    for (double r2 : rings)
        if (distinct.empty() || r2 - distinct.back() > 1e-12) distinct.push_back(r2);
    // a handful of rings, not thousands of slightly-off values
    CHECK(distinct.size() < mesh.nodes.size() / geom.sectors + 2);
    for (const Vec2& p : mesh.nodes) {
        const double r2 = p.x * p.x + p.y * p.y;
        bool on_ring = false;
        for (double rr : distinct)
            if (std::abs(r2 - rr) <= 1e-12) on_ring = true;
        CHECK(on_ring);
    }
}

TEST_CASE("mandatory rings exist exactly") {
    const MeshGeometry geom = coarse_geometry();
    const Mesh2D mesh = generate_disk_mesh(geom);
    for (double target : {geom.center_size, geom.cyl_size - geom.wall_size,
                          geom.cyl_size, geom.cyl_size + geom.d_size,
                          geom.boundary_size}) {
        bool found = false;
        for (const Vec2& p : mesh.nodes)
            if (std::abs(std::hypot(p.x, p.y) - target) <= 1e-13) found = true;
        CHECK_MESSAGE(found, "no ring at r=", target);
    }
}

TEST_CASE("triangle areas sum to the inscribed polygon area") {
    const MeshGeometry geom = coarse_geometry();
    const Mesh2D mesh = generate_disk_mesh(geom);
    const double R = geom.boundary_size;
    const int S = geom.sectors;
    const double polygon = 0.5 * S * R * R * std::sin(2.0 * kPi / S);
    CHECK(std::abs(mesh.total_area() - polygon) <= 1e-12 * polygon);
    CHECK(std::abs(mesh.total_area() - kPi * R * R) <= 0.005 * kPi * R * R);
}

TEST_CASE("generated mesh passes validation and has sane regions") {
    const MeshGeometry geom = coarse_geometry();
    const Mesh2D mesh = generate_disk_mesh(geom);
    const MeshDiagnostics diag = validate_mesh(mesh);
    const std::string first = diag.messages.empty() ? std::string{} : diag.messages.front();
    CHECK_MESSAGE(diag.pass(), first);

    int in = 0, wall = 0, out = 0;
    for (const Triangle& t : mesh.triangles) {
        if (t.region == kRegionIn) ++in;
        if (t.region == kRegionWall) ++wall;
        if (t.region == kRegionOut) ++out;
    }
    CHECK(in > 0);
    CHECK(wall > 0);
    CHECK(out > 0);
}

TEST_CASE("node set is bitwise mirror symmetric") {
    const Mesh2D mesh = generate_disk_mesh(coarse_geometry());
    std::set<std::pair<double, double>> nodes;
    for (const Vec2& p : mesh.nodes) nodes.insert({p.x, p.y});
    for (const Vec2& p : mesh.nodes) {
        CHECK(nodes.count({-p.x, p.y}) == 1);
        CHECK(nodes.count({p.x, -p.y}) == 1);
    }
}

TEST_CASE("geometry invariants are enforced") {
    MeshGeometry geom;
    geom.sectors = 30;  // not divisible by 4
    CHECK_THROWS_AS(generate_disk_mesh(geom), ConfigError);
    geom = MeshGeometry{};
    geom.wall_size = 1.5;  // thicker than the cylinder
    CHECK_THROWS_AS(generate_disk_mesh(geom), ConfigError);
    geom = MeshGeometry{};
    geom.boundary_size = 1.05;  // inside cyl + d
    CHECK_THROWS_AS(generate_disk_mesh(geom), ConfigError);
}

TEST_CASE("plate_half_width evaluates the cross-section footprint") {
    CHECK(plate_half_width(1.0, 0.2, 0.0) ==
          doctest::Approx(0.09983341664682815).epsilon(1e-14));
    CHECK(plate_half_width(1.0, 1e-9, 5.0) < 1e-8);
    // alpha = pi exactly: maxX = r
    const double d_pi = kPi;  // r = 1, omega = 0
    CHECK(plate_half_width(1.0, d_pi, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(plate_half_width(1.0, 3.5, 0.0), ConfigError);
    CHECK_THROWS_AS(plate_half_width(1.0, 0.2, 100.0), ConfigError);
    CHECK_THROWS_AS(plate_half_width(-1.0, 0.2, 0.0), ConfigError);
    CHECK_THROWS_AS(plate_half_width(1.0, 0.0, 0.0), ConfigError);
}

TEST_CASE("mark_boundaries selects plate nodes") {
    MeshGeometry geom = coarse_geometry();
    geom.sectors = 360;
    const Mesh2D mesh = generate_disk_mesh(geom);

    SUBCASE("brute-force enumeration oracle at r=1, d=0.2, omega=0") {
        const BoundaryMarking marking = mark_boundaries(mesh, 1.0, 0.2, 0.0);
        const double max_x = plate_half_width(1.0, 0.2, 0.0);
        int expect_top = 0, expect_bottom = 0;
        for (const Vec2& p : mesh.nodes) {
            if (std::abs(std::hypot(p.x, p.y) - 1.0) > 1e-3) continue;
            if (std::abs(p.x) > max_x) continue;
            if (p.y > 0.0) ++expect_top;
            if (p.y < 0.0) ++expect_bottom;
        }
        CHECK(static_cast<int>(marking.top_nodes.size()) == expect_top);
        CHECK(static_cast<int>(marking.bottom_nodes.size()) == expect_bottom);
        CHECK(expect_top > 0);
        CHECK(marking.outer_edges == mesh.boundary_edges);
    }

    SUBCASE("alpha = pi captures the whole half circle") {
        const BoundaryMarking marking = mark_boundaries(mesh, 1.0, kPi, 0.0);
        int upper = 0;
        for (const Vec2& p : mesh.nodes)
            if (std::abs(std::hypot(p.x, p.y) - 1.0) <= 1e-3 && p.y > 0.0) ++upper;
        CHECK(static_cast<int>(marking.top_nodes.size()) == upper);
    }

    SUBCASE("omega = 0 equals fixed cross-section at the same width") {
        const BoundaryMarking a = mark_boundaries(mesh, 1.0, 0.3, 0.0, false);
        const BoundaryMarking b = mark_boundaries(mesh, 1.0, 0.3, 7.7, true);
        CHECK(a.top_nodes == b.top_nodes);
        CHECK(a.bottom_nodes == b.bottom_nodes);
    }

    SUBCASE("top and bottom sets are disjoint and non-empty") {
        const BoundaryMarking m = mark_boundaries(mesh, 1.0, 0.4, 1.0);
        std::set<int> top(m.top_nodes.begin(), m.top_nodes.end());
        for (int b : m.bottom_nodes) CHECK(top.count(b) == 0);
        CHECK(!m.top_nodes.empty());
        CHECK(!m.bottom_nodes.empty());
    }

    SUBCASE("no ring within tolerance of the requested plate circle") {
        CHECK_THROWS_AS(mark_boundaries(mesh, 0.955, 0.2, 0.0), ConfigError);
    }
}

TEST_CASE("validate_mesh flags defects") {
    Mesh2D mesh = generate_disk_mesh(coarse_geometry());

    SUBCASE("reversed triangle orientation") {
        std::swap(mesh.triangles[5].v[0], mesh.triangles[5].v[1]);
        const MeshDiagnostics diag = validate_mesh(mesh);
        CHECK(diag.orientation_violations == 1);
        CHECK(!diag.pass());
    }

    SUBCASE("unknown region tag") {
        mesh.triangles[7].region = 7;
        const MeshDiagnostics diag = validate_mesh(mesh);
        CHECK(diag.bad_region_tags == 1);
        CHECK(!diag.pass());
    }

    SUBCASE("dangling node reference") {
        mesh.triangles[3].v[2] = static_cast<int>(mesh.nodes.size()) + 5;
        CHECK(validate_mesh(mesh).dangling_references == 1);
    }

    SUBCASE("duplicate node") {
        mesh.nodes.push_back(mesh.nodes[10]);
        CHECK(validate_mesh(mesh).duplicate_nodes == 1);
    }

    SUBCASE("boundary edge set mismatch") {
        mesh.boundary_edges.pop_back();
        CHECK(!validate_mesh(mesh).boundary_edges_consistent);
    }
}
