#pragma once

// shared helpers for the test suites: small structured meshes and a dense
// direct solver used as an independent oracle for the CG path

#include <cmath>
#include <stdexcept>
#include <vector>

#include "spiralcap/fem.hpp"
#include "spiralcap/mesh.hpp"

namespace test_support {

// structured unit-square triangulation with (n+1)^2 nodes, all region 1
inline spiralcap::Mesh2D square_mesh(int n) {
    spiralcap::Mesh2D mesh;
    const double h = 1.0 / n;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) mesh.nodes.push_back({i * h, j * h});
    const auto id = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            mesh.triangles.push_back({{id(i, j), id(i + 1, j), id(i + 1, j + 1)}, 1});
            mesh.triangles.push_back({{id(i, j), id(i + 1, j + 1), id(i, j + 1)}, 1});
        }
    for (int i = 0; i < n; ++i) {
        mesh.boundary_edges.push_back({id(i, 0), id(i + 1, 0)});
        mesh.boundary_edges.push_back({id(i + 1, n), id(i, n)});
        mesh.boundary_edges.push_back({id(0, i + 1), id(0, i)});
        mesh.boundary_edges.push_back({id(n, i), id(n, i + 1)});
    }
    return mesh;
}

// uniform annulus r0 <= r <= r1 with nr radial intervals and ns sectors,
// alternating diagonals, all region 1
inline spiralcap::Mesh2D annulus_mesh(double r0, double r1, int nr, int ns) {
    spiralcap::Mesh2D mesh;
    for (int i = 0; i <= nr; ++i) {
        const double r = r0 + (r1 - r0) * i / nr;
        for (int j = 0; j < ns; ++j) {
            const double th = 2.0 * M_PI * j / ns;
            mesh.nodes.push_back({r * std::cos(th), r * std::sin(th)});
        }
    }
    const auto id = [ns](int ring, int j) { return ring * ns + (j % ns); };
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < ns; ++j) {
            const int a = id(i, j);
            const int d = id(i + 1, j);
            const int c = id(i + 1, j + 1);
            const int b = id(i, j + 1);
            if (j % 2 == 0) {
                mesh.triangles.push_back({{a, d, c}, 1});
                mesh.triangles.push_back({{a, c, b}, 1});
            } else {
                mesh.triangles.push_back({{a, d, b}, 1});
                mesh.triangles.push_back({{d, c, b}, 1});
            }
        }
    for (int j = 0; j < ns; ++j) {
        mesh.boundary_edges.push_back({id(0, j + 1), id(0, j)});
        mesh.boundary_edges.push_back({id(nr, j), id(nr, j + 1)});
    }
    return mesh;
}

inline std::vector<int> nodes_at_radius(const spiralcap::Mesh2D& mesh, double r,
                                        double tol = 1e-9) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(mesh.nodes.size()); ++i)
        if (std::abs(std::hypot(mesh.nodes[i].x, mesh.nodes[i].y) - r) <= tol)
            out.push_back(i);
    return out;
}

// dense Gaussian elimination with partial pivoting
inline std::vector<double> dense_solve(std::vector<std::vector<double>> a,
                                       std::vector<double> b) {
    const int n = static_cast<int>(b.size());
    for (int k = 0; k < n; ++k) {
        int pivot = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a[i][k]) > std::abs(a[pivot][k])) pivot = i;
        if (a[pivot][k] == 0.0) throw std::runtime_error("dense_solve: singular");
        std::swap(a[k], a[pivot]);
        std::swap(b[k], b[pivot]);
        for (int i = k + 1; i < n; ++i) {
            const double m = a[i][k] / a[k][k];
            for (int j = k; j < n; ++j) a[i][j] -= m * a[k][j];
            b[i] -= m * b[k];
        }
    }
    std::vector<double> x(n);
    for (int i = n - 1; i >= 0; --i) {
        double s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a[i][j] * x[j];
        x[i] = s / a[i][i];
    }
    return x;
}

inline std::vector<std::vector<double>> csr_to_dense(const spiralcap::fem::CsrMatrix& m) {
    std::vector<std::vector<double>> dense(m.n, std::vector<double>(m.n, 0.0));
    for (int i = 0; i < m.n; ++i)
        for (int idx = m.row_ptr[i]; idx < m.row_ptr[i + 1]; ++idx)
            dense[i][m.col[idx]] = m.val[idx];
    return dense;
}

}  // namespace test_support
