#pragma once

#include <string>

#include "spiralcap/runconfig.hpp"

namespace spiralcap {

struct RunOptions {
    std::string out_base;  // output base path; command-specific extensions
    int jobs = 1;
};

/// Dispatch one CLI command. Returns the process exit code:
/// 0 ok, 1 configuration error, 2 mesh error, 3 solver non-convergence.
int run(const std::string& command, const RunConfig& config, const RunOptions& opts);

}  // namespace spiralcap
