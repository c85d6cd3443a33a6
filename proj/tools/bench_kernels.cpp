// Benchmark of the OpenMP-parallel kernels against their serial reference
// implementations: FEM assembly and the per-region energy integration.
// Both pairs must agree bitwise; the parallel paths merge per-element
// results in a fixed order, so the thread count cannot change the output.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "spiralcap/capacitor.hpp"
#include "spiralcap/fem.hpp"
#include "spiralcap/specfun.hpp"

using namespace spiralcap;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename Fn>
double time_best_of(int reps, Fn&& fn) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto start = Clock::now();
        fn();
        best = std::min(best, seconds_since(start));
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    const int sectors = argc > 1 ? std::stoi(argv[1]) : 720;
    const int reps = argc > 2 ? std::stoi(argv[2]) : 3;

    CapacitorConfig config;
    config.mesh.sectors = sectors;
    config.omega = nu_to_omega(1.0, config.r_cyl);

    const Mesh2D mesh = generate_disk_mesh(config.mesh_geometry());
    const BoundaryMarking marking =
        mark_boundaries(mesh, config.r_cyl, config.d, config.omega);
    const double beta = specfun::robin_coefficient(config.omega, config.R);
    const fem::RegionEps eps = {config.eps_out, config.eps_in, config.eps_wall};

    std::printf("mesh: %zu nodes, %zu triangles (sectors = %d)\n",
                mesh.nodes.size(), mesh.triangles.size(), sectors);
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; parallel path runs serially\n");
#endif

    fem::LinearSystem serial_sys, parallel_sys;
    const double t_serial = time_best_of(reps, [&] {
        serial_sys = fem::assemble(mesh, marking, config.omega, eps, beta, nullptr,
                                   {0.5, -0.5}, fem::Exec::serial);
    });
    const double t_parallel = time_best_of(reps, [&] {
        parallel_sys = fem::assemble(mesh, marking, config.omega, eps, beta, nullptr,
                                     {0.5, -0.5}, fem::Exec::parallel);
    });
    const bool assembly_match = serial_sys.matrix.val == parallel_sys.matrix.val &&
                                serial_sys.rhs == parallel_sys.rhs;
    std::printf("assembly:  serial %8.3f ms | parallel %8.3f ms | speedup %.2fx | %s\n",
                1e3 * t_serial, 1e3 * t_parallel, t_serial / t_parallel,
                assembly_match ? "bitwise equal" : "MISMATCH");

    Solution sol = solve_potential(config, std::make_shared<const Mesh2D>(mesh));
    EnergyReport serial_report, parallel_report;
    const double e_serial = time_best_of(reps, [&] {
        serial_report = energy_report(sol, fem::Exec::serial);
    });
    const double e_parallel = time_best_of(reps, [&] {
        parallel_report = energy_report(sol, fem::Exec::parallel);
    });
    const bool energy_match = serial_report.E_in == parallel_report.E_in &&
                              serial_report.E_wall == parallel_report.E_wall &&
                              serial_report.E_out == parallel_report.E_out;
    std::printf("energy:    serial %8.3f ms | parallel %8.3f ms | speedup %.2fx | %s\n",
                1e3 * e_serial, 1e3 * e_parallel, e_serial / e_parallel,
                energy_match ? "bitwise equal" : "MISMATCH");

    std::printf("solve: %d CG iterations, relative residual %.2e\n", sol.iterations,
                sol.residual);
    return (assembly_match && energy_match) ? 0 : 1;
}
