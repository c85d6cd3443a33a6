// spiralcap: spiral-electrode capacitive sensor design tool
//
//   spiralcap <command> [--config PATH] [--set key=value ...]
//             [--out PATH] [--jobs N]
//
// commands: mesh, solve, sweep, optimize, profile

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spiralcap/errors.hpp"
#include "spiralcap/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spiral-electrode capacitive water-level sensor designer"};
    app.require_subcommand(1);

    struct Options {
        std::string config_path;
        std::vector<std::string> overrides;
        std::string out;
        int jobs = 1;
    } options;

    const auto add_common = [&options](CLI::App* cmd) {
        cmd->add_option("--config", options.config_path,
                        "JSON configuration file (missing file = defaults)");
        cmd->add_option("--set", options.overrides,
                        "override a config key, e.g. --set wall_thickness=0.025");
        cmd->add_option("--out", options.out,
                        "output base path (extension added per command)");
        cmd->add_option("--jobs", options.jobs, "parallel solves where supported")
            ->check(CLI::PositiveNumber);
    };

    add_common(app.add_subcommand("mesh", "generate, validate and write the MSH mesh"));
    add_common(app.add_subcommand("solve", "solve one configuration; write VTK + JSON"));
    add_common(app.add_subcommand("sweep", "capacitance/sensitivity vs winding frequency; write CSV"));
    add_common(app.add_subcommand("optimize", "maximize sensitivity over (nu, d); write JSON"));
    add_common(app.add_subcommand("profile", "potential along the Y axis; write CSV"));

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    spiralcap::RunConfig config;
    try {
        config = options.config_path.empty()
                     ? spiralcap::parse_config("", options.overrides)
                     : spiralcap::parse_config_file(options.config_path, options.overrides);
    } catch (const spiralcap::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    }

    return spiralcap::run(command, config, {options.out, options.jobs});
}
