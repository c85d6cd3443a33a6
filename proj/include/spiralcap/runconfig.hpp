#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "spiralcap/capacitor.hpp"
#include "spiralcap/optimize.hpp"

namespace spiralcap {

/// Everything one CLI invocation needs: the capacitor problem plus the
/// command-specific blocks. All fields carry defaults; a missing config
/// file means "all defaults".
struct RunConfig {
    double nu = 0.5;  // winding frequency in loops per radius ("omega_loops")
    CapacitorConfig capacitor;
    std::vector<double> sweep_grid;
    NelderMeadOptions optimizer;
    int profile_samples = 201;

    /// capacitor config with omega derived from nu
    CapacitorConfig problem() const {
        CapacitorConfig c = capacitor;
        c.omega = nu_to_omega(nu, c.r_cyl);
        return c;
    }
};

/// Parse and validate a JSON config document. Unknown keys are rejected;
/// overrides ("dotted.path=value", value in JSON syntax) are applied on top
/// of the document before validation. Throws ConfigError naming the
/// offending key.
RunConfig parse_config(const std::string& text,
                       const std::vector<std::string>& overrides = {});

/// Reads the file when it exists; a missing file yields the all-defaults
/// config (overrides still apply).
RunConfig parse_config_file(const std::string& path,
                            const std::vector<std::string>& overrides = {});

/// Full effective configuration as a JSON document (every key present),
/// embedded in output files for reproducibility.
nlohmann::json effective_json(const RunConfig& config);

/// FNV-1a hash of the canonical config dump, printed in output headers.
std::string config_hash(const RunConfig& config);

}  // namespace spiralcap
