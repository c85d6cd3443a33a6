#include "doctest.h"

#include <cmath>
#include <random>
#include <set>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spiralcap/errors.hpp"
#include "spiralcap/fem.hpp"
#include "spiralcap/oracle.hpp"
#include "test_support.hpp"

using namespace spiralcap;
using namespace spiralcap::fem;

namespace {

Mesh2D unit_right_triangle() {
    Mesh2D mesh;
    mesh.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
    mesh.triangles = {{{0, 1, 2}, 1}};
    mesh.boundary_edges = {{0, 1}, {1, 2}, {2, 0}};
    return mesh;
}

}  // namespace

TEST_CASE("anisotropy tensor") {
    const AnisotropyTensor id1 = anisotropy_tensor(0.0, 0.0, 3.0);
    CHECK(id1.kxx == 1.0);
    CHECK(id1.kxy == 0.0);
    CHECK(id1.kyy == 1.0);
    const AnisotropyTensor id2 = anisotropy_tensor(1.7, -0.4, 0.0);
    CHECK(id2.kxx == 1.0);
    CHECK(id2.kxy == 0.0);
    CHECK(id2.kyy == 1.0);
    const AnisotropyTensor k = anisotropy_tensor(1.0, 2.0, 0.5);
    CHECK(k.det() == doctest::Approx(2.25).epsilon(1e-15));
    // eigenvalues {1, 1 + w^2 r^2}: check trace and determinant
    const double w2r2 = 0.25 * 5.0;
    CHECK(k.kxx + k.kyy == doctest::Approx(2.0 + w2r2).epsilon(1e-15));
    CHECK(k.det() == doctest::Approx(1.0 + w2r2).epsilon(1e-15));
}

TEST_CASE("element stiffness of the unit right triangle") {
    const Mesh2D mesh = unit_right_triangle();
    const LinearSystem sys = assemble(mesh, 0.0, RegionEps{}, 0.0, {}, nullptr, {});
    const double expect[3][3] = {{1.0, -0.5, -0.5}, {-0.5, 0.5, 0.0}, {-0.5, 0.0, 0.5}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(sys.matrix.get(i, j) == doctest::Approx(expect[i][j]).epsilon(1e-14));
    for (double v : sys.rhs) CHECK(v == 0.0);
}

TEST_CASE("assembled matrix is exactly symmetric") {
    MeshGeometry geom;
    geom.sectors = 64;
    geom.center_density = 0.2;
    geom.cyl_density = 0.05;
    geom.near_cyl_density = 0.1;
    geom.out_density = 0.5;
    const Mesh2D mesh = generate_disk_mesh(geom);
    const BoundaryMarking marking = mark_boundaries(mesh, 1.0, 0.4, 1.5);
    const LinearSystem sys = assemble(mesh, marking, 1.5, RegionEps{1.0, 81.0, 10.0},
                                      0.9, nullptr, {0.5, -0.5});
    CHECK(sys.matrix.max_asymmetry() == 0.0);
}

TEST_CASE("rhs carries only Dirichlet data when f = 0") {
    const Mesh2D mesh = test_support::square_mesh(4);
    std::vector<std::pair<int, double>> dirichlet = {{7, 2.0}};
    const LinearSystem sys = assemble(mesh, 0.0, RegionEps{}, 0.0, {}, nullptr, dirichlet);
    std::set<int> adjacent;
    for (const Triangle& tri : mesh.triangles) {
        for (int v : tri.v)
            if (v == 7)
                for (int w : tri.v) adjacent.insert(w);
    }
    int carried = 0;
    for (int i = 0; i < sys.matrix.n; ++i) {
        if (i == 7) {
            CHECK(sys.rhs[i] == 2.0);
        } else if (!adjacent.count(i)) {
            CHECK(sys.rhs[i] == 0.0);
        } else if (sys.rhs[i] != 0.0) {
            ++carried;
        }
    }
    CHECK(carried > 0);  // the eliminated column landed on the neighbors
}

TEST_CASE("random quadratic forms are positive") {
    const Mesh2D mesh = test_support::square_mesh(5);
    const BoundaryMarking none;
    std::vector<std::pair<int, double>> dirichlet = {{0, 1.0}};
    const LinearSystem sys = assemble(mesh, 0.8, RegionEps{}, 0.0, {}, nullptr, dirichlet);
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    std::vector<double> v(sys.matrix.n), av;
    for (int trial = 0; trial < 100; ++trial) {
        for (double& vi : v) vi = gauss(rng);
        sys.matrix.multiply(v, av);
        double vav = 0.0;
        for (int i = 0; i < sys.matrix.n; ++i) vav += v[i] * av[i];
        CHECK(vav > 0.0);
    }
}

TEST_CASE("1x1 free system") {
    LinearSystem sys;
    sys.matrix.n = 1;
    sys.matrix.row_ptr = {0, 1};
    sys.matrix.col = {0};
    sys.matrix.val = {4.0};
    sys.rhs = {2.0};
    const SolveResult res = solve_spd(sys);
    CHECK(res.u[0] == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("P1 reproduces linear solutions exactly") {
    const int n = 4;
    const Mesh2D mesh = test_support::square_mesh(n);
    std::vector<std::pair<int, double>> dirichlet;
    for (int i = 0; i < static_cast<int>(mesh.nodes.size()); ++i) {
        if (mesh.nodes[i].x == 0.0) dirichlet.emplace_back(i, 0.0);
        if (mesh.nodes[i].x == 1.0) dirichlet.emplace_back(i, 1.0);
    }
    const LinearSystem sys = assemble(mesh, 0.0, RegionEps{}, 0.0, {}, nullptr, dirichlet);
    const SolveResult res = solve_spd(sys, 1e-12);
    for (int i = 0; i < static_cast<int>(mesh.nodes.size()); ++i)
        CHECK(std::abs(res.u[i] - mesh.nodes[i].x) < 1e-10);
}

TEST_CASE("CG agrees with a dense direct solve") {
    const Mesh2D mesh = test_support::square_mesh(10);
    std::vector<std::pair<int, double>> dirichlet;
    for (int i = 0; i < static_cast<int>(mesh.nodes.size()); ++i) {
        const Vec2& p = mesh.nodes[i];
        if (p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0)
            dirichlet.emplace_back(i, std::sin(3.0 * p.x) + 0.3 * p.y);
    }
    const auto f = [](double x, double y) { return std::cos(x + 2.0 * y); };
    const LinearSystem sys = assemble(mesh, 0.0, RegionEps{}, 0.0, {}, f, dirichlet);
    const SolveResult res = solve_spd(sys, 1e-12);
    const auto dense = test_support::csr_to_dense(sys.matrix);
    const auto exact = test_support::dense_solve(dense, sys.rhs);
    for (int i = 0; i < sys.matrix.n; ++i)
        CHECK(std::abs(res.u[i] - exact[i]) < 1e-8);

    SUBCASE("A-norm error descends at every iteration") {
        CHECK(!res.energy_error_drops.empty());
        for (double drop : res.energy_error_drops) CHECK(drop > 0.0);
        // and the residual ends far below where it started
        CHECK(res.residual_history.back() <
              1e-9 * res.residual_history.front());
    }
    SUBCASE("constrained dofs carry their values exactly") {
        for (const auto& [dof, value] : sys.constraints) CHECK(res.u[dof] == value);
    }
}

TEST_CASE("discrete maximum principle on a well-shaped mesh") {
    const Mesh2D mesh = test_support::square_mesh(8);
    std::vector<std::pair<int, double>> dirichlet;
    double lo = 1e300, hi = -1e300;
    for (int i = 0; i < static_cast<int>(mesh.nodes.size()); ++i) {
        const Vec2& p = mesh.nodes[i];
        if (p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0) {
            const double v = std::sin(5.0 * p.x) - 0.7 * p.y;
            dirichlet.emplace_back(i, v);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const LinearSystem sys = assemble(mesh, 0.0, RegionEps{}, 0.0, {}, nullptr, dirichlet);
    const SolveResult res = solve_spd(sys, 1e-12);
    for (double u : res.u) {
        CHECK(u >= lo - 1e-10);
        CHECK(u <= hi + 1e-10);
    }
}

TEST_CASE("Robin-only system has the trivial solution") {
    const Mesh2D mesh = test_support::square_mesh(6);
    const LinearSystem sys =
        assemble(mesh, 0.0, RegionEps{}, 2.5, mesh.boundary_edges, nullptr, {});
    const SolveResult res = solve_spd(sys);
    for (double u : res.u) CHECK(std::abs(u) <= 1e-12);
}

TEST_CASE("solver error paths") {
    SUBCASE("zero diagonal") {
        LinearSystem sys;
        sys.matrix.n = 2;
        sys.matrix.row_ptr = {0, 1, 2};
        sys.matrix.col = {0, 1};
        sys.matrix.val = {1.0, 0.0};
        sys.rhs = {1.0, 1.0};
        CHECK_THROWS_AS(solve_spd(sys), SingularError);
    }
    SUBCASE("iteration cap carries the residual") {
        const Mesh2D mesh = test_support::square_mesh(12);
        std::vector<std::pair<int, double>> dirichlet = {{0, 1.0}};
        const LinearSystem sys =
            assemble(mesh, 0.0, RegionEps{}, 0.0, {}, nullptr, dirichlet);
        try {
            solve_spd(sys, 1e-14, 2);
            FAIL("expected SolverError");
        } catch (const SolverError& e) {
            CHECK(e.residual() > 0.0);
        }
    }
    SUBCASE("unknown region tag") {
        Mesh2D mesh = unit_right_triangle();
        mesh.triangles[0].region = 9;
        CHECK_THROWS_AS(assemble(mesh, 0.0, RegionEps{}, 0.0, {}, nullptr, {}),
                        ConfigError);
    }
}

TEST_CASE("parallel assembly is bitwise identical to the serial reference") {
    MeshGeometry geom;
    geom.sectors = 96;
    geom.center_density = 0.15;
    geom.cyl_density = 0.03;
    geom.near_cyl_density = 0.06;
    geom.out_density = 0.4;
    const Mesh2D mesh = generate_disk_mesh(geom);
    const BoundaryMarking marking = mark_boundaries(mesh, 1.0, 0.3, 2.0);
    const auto f = [](double x, double y) { return x * y + 0.1; };

    const LinearSystem serial = assemble(mesh, marking, 2.0, RegionEps{1.0, 81.0, 10.0},
                                         1.1, f, {0.5, -0.5}, Exec::serial);
#ifdef _OPENMP
    for (int threads : {1, 2, 3}) {
        omp_set_num_threads(threads);
        const LinearSystem par = assemble(mesh, marking, 2.0, RegionEps{1.0, 81.0, 10.0},
                                          1.1, f, {0.5, -0.5}, Exec::parallel);
        CHECK(par.matrix.val == serial.matrix.val);
        CHECK(par.rhs == serial.rhs);
    }
#else
    const LinearSystem par = assemble(mesh, marking, 2.0, RegionEps{1.0, 81.0, 10.0},
                                      1.1, f, {0.5, -0.5}, Exec::parallel);
    CHECK(par.matrix.val == serial.matrix.val);
    CHECK(par.rhs == serial.rhs);
#endif
}

TEST_CASE("field evaluation") {
    const Mesh2D mesh = test_support::square_mesh(3);
    ScalarField field;
    field.mesh = &mesh;
    field.values.resize(mesh.nodes.size());
    for (std::size_t i = 0; i < mesh.nodes.size(); ++i)
        field.values[i] = mesh.nodes[i].x + 2.0 * mesh.nodes[i].y;

    SUBCASE("node values are exact") {
        for (std::size_t i = 0; i < mesh.nodes.size(); ++i)
            CHECK(evaluate(field, mesh.nodes[i].x, mesh.nodes[i].y) == field.values[i]);
    }
    SUBCASE("centroid equals the mean of the vertices") {
        const Triangle& tri = mesh.triangles[4];
        const double cx = (mesh.nodes[tri.v[0]].x + mesh.nodes[tri.v[1]].x +
                           mesh.nodes[tri.v[2]].x) / 3.0;
        const double cy = (mesh.nodes[tri.v[0]].y + mesh.nodes[tri.v[1]].y +
                           mesh.nodes[tri.v[2]].y) / 3.0;
        const double mean = (field.values[tri.v[0]] + field.values[tri.v[1]] +
                             field.values[tri.v[2]]) / 3.0;
        CHECK(evaluate(field, cx, cy) == doctest::Approx(mean).epsilon(1e-13));
    }
    SUBCASE("linear fields are reproduced everywhere") {
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> coord(0.0, 1.0);
        for (int trial = 0; trial < 50; ++trial) {
            const double x = coord(rng), y = coord(rng);
            CHECK(std::abs(evaluate(field, x, y) - (x + 2.0 * y)) < 1e-12);
        }
    }
    SUBCASE("outside point throws") {
        CHECK_THROWS_AS(evaluate(field, 2.0, 0.5), std::domain_error);
    }
}

TEST_CASE("manufactured source converges at second order") {
    // u* = xy, f = 4 w^2 xy, Dirichlet from u* on the whole square boundary
    const double omega = 0.8;
    const auto ms = spiralcap::oracle::manufactured_source(omega);
    double prev_err = 0.0;
    for (int n : {8, 16, 32}) {
        const Mesh2D mesh = test_support::square_mesh(n);
        std::vector<std::pair<int, double>> dirichlet;
        for (int i = 0; i < static_cast<int>(mesh.nodes.size()); ++i) {
            const Vec2& p = mesh.nodes[i];
            if (p.x == 0.0 || p.x == 1.0 || p.y == 0.0 || p.y == 1.0)
                dirichlet.emplace_back(i, ms.exact(p.x, p.y));
        }
        const auto f = [&ms](double x, double y) { return ms.source(x, y); };
        const LinearSystem sys = assemble(mesh, omega, RegionEps{}, 0.0, {}, f, dirichlet);
        const SolveResult res = solve_spd(sys, 1e-12);
        // L2 error by midpoint quadrature
        double err2 = 0.0;
        for (int t = 0; t < static_cast<int>(mesh.triangles.size()); ++t) {
            const Triangle& tri = mesh.triangles[t];
            const double area = mesh.signed_area(t);
            for (int e = 0; e < 3; ++e) {
                const Vec2& a = mesh.nodes[tri.v[e]];
                const Vec2& b = mesh.nodes[tri.v[(e + 1) % 3]];
                const double mx = 0.5 * (a.x + b.x), my = 0.5 * (a.y + b.y);
                const double uh = 0.5 * (res.u[tri.v[e]] + res.u[tri.v[(e + 1) % 3]]);
                const double diff = uh - ms.exact(mx, my);
                err2 += area / 3.0 * diff * diff;
            }
        }
        const double err = std::sqrt(err2);
        if (prev_err > 0.0) {
            const double ratio = prev_err / err;
            CHECK(ratio > 3.0);
            CHECK(ratio < 5.0);
        }
        prev_err = err;
    }
}
