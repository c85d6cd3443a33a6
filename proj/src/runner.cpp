#include "spiralcap/runner.hpp"

#include <cmath>
#include <fstream>
#include <iostream>

#include "spiralcap/errors.hpp"
#include "spiralcap/msh_io.hpp"
#include "spiralcap/output.hpp"

namespace spiralcap {

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    return out;
}

int run_mesh(const RunConfig& config, const std::string& base) {
    const Mesh2D mesh = generate_disk_mesh(config.capacitor.mesh_geometry());
    const MeshDiagnostics diag = validate_mesh(mesh);
    if (!diag.pass()) {
        for (const std::string& msg : diag.messages) std::cerr << msg << "\n";
        return 2;
    }
    const std::string path = base + ".msh";
    {
        auto out = open_out(path);
        export_msh(mesh, out, effective_json(config).dump());
    }
    // prove the file is re-importable before declaring success
    const Mesh2D back = import_msh_file(path);
    if (back.nodes.size() != mesh.nodes.size() ||
        back.triangles.size() != mesh.triangles.size() ||
        std::abs(back.total_area() - mesh.total_area()) >
            1e-12 * mesh.total_area()) {
        std::cerr << "round-trip check failed for " << path << "\n";
        return 2;
    }
    std::cout << "wrote " << path << ": " << mesh.nodes.size() << " nodes, "
              << mesh.triangles.size() << " triangles, "
              << mesh.boundary_edges.size() << " boundary edges\n";
    return 0;
}

int run_solve(const RunConfig& config, const std::string& base) {
    const Solution sol = solve_potential(config.problem());
    const EnergyReport report = energy_report(sol);
    const std::vector<double> density = project_energy_density(sol);

    const std::string hash = config_hash(config);
    {
        auto out = open_out(base + ".vtk");
        write_vtk(out, *sol.mesh, sol.field.values, density,
                  "spiralcap potential (config " + hash + ")");
    }
    nlohmann::json doc;
    doc["config"] = effective_json(config);
    doc["config_hash"] = hash;
    doc["energy"] = {{"E_in", report.E_in},
                     {"E_wall", report.E_wall},
                     {"E_out", report.E_out},
                     {"E_total", report.E_total}};
    doc["c_total"] = report.C_total;
    doc["c_in"] = report.C_in;
    doc["sensitivity"] = report.sensitivity;
    doc["solver"] = {{"iterations", sol.iterations}, {"residual", sol.residual}};
    {
        auto out = open_out(base + ".json");
        out << doc.dump(2) << "\n";
    }
    std::cout << "solved: C_total = " << fmt12(report.C_total)
              << ", sensitivity = " << fmt12(report.sensitivity) << "\n";
    return 0;
}

int run_sweep(const RunConfig& config, const std::string& base, int jobs) {
    if (config.sweep_grid.empty())
        throw ConfigError("sweep: config key 'sweep.nu_grid' is empty");
    const auto rows = sweep_omega(config.capacitor, config.sweep_grid, jobs);
    {
        auto out = open_out(base + ".csv");
        write_sweep_csv(out, rows, config_hash(config), effective_json(config).dump());
    }
    int ok = 0;
    for (const SweepRow& row : rows) ok += row.ok ? 1 : 0;
    std::cout << "sweep: " << ok << "/" << rows.size() << " points solved, wrote "
              << base << ".csv\n";
    if (ok == 0) throw SolverError("sweep: every grid point failed", 0.0);
    return 0;
}

int run_optimize(const RunConfig& config, const std::string& base) {
    const SensitivityOptimum opt =
        optimize_sensitivity(config.capacitor, config.optimizer);
    nlohmann::json doc;
    doc["config"] = effective_json(config);
    doc["config_hash"] = config_hash(config);
    doc["nu_star"] = opt.nu;
    doc["d_star_cross_section"] = opt.d_cross;
    doc["d_star_along_stripe"] = opt.d_along;
    doc["sensitivity_star"] = opt.sensitivity;
    doc["iterations"] = opt.iterations;
    doc["converged"] = opt.converged;
    auto& evals = doc["evaluations"] = nlohmann::json::array();
    for (const SensitivityEvaluation& e : opt.evaluations)
        evals.push_back({{"nu", e.nu},
                         {"d", e.d},
                         {"sensitivity", e.sensitivity},
                         {"guarded", e.guarded},
                         {"cached", e.cached},
                         {"failed", e.failed}});
    {
        auto out = open_out(base + ".json");
        out << doc.dump(2) << "\n";
    }
    std::cout << "optimum: nu = " << fmt12(opt.nu) << ", d = " << fmt12(opt.d_cross)
              << " (cross-section), sensitivity = " << fmt12(opt.sensitivity) << "\n";
    return 0;
}

int run_profile(const RunConfig& config, const std::string& base) {
    const Solution sol = solve_potential(config.problem());
    const auto samples = profile_along_y(sol, config.profile_samples);
    {
        auto out = open_out(base + ".csv");
        write_profile_csv(out, samples, config_hash(config),
                          effective_json(config).dump());
    }
    std::cout << "profile: " << samples.size() << " samples, wrote " << base
              << ".csv\n";
    return 0;
}

}  // namespace

int run(const std::string& command, const RunConfig& config, const RunOptions& opts) {
    try {
        const std::string base = opts.out_base.empty() ? command : opts.out_base;
        if (command == "mesh") return run_mesh(config, base);
        if (command == "solve") return run_solve(config, base);
        if (command == "sweep") return run_sweep(config, base, opts.jobs);
        if (command == "optimize") return run_optimize(config, base);
        if (command == "profile") return run_profile(config, base);
        std::cerr << "unknown command '" << command << "'\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "mesh error: " << e.what() << "\n";
        return 2;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const SingularError& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace spiralcap
