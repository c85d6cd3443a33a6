#pragma once

#include <array>
#include <functional>
#include <vector>

#include "spiralcap/capacitor.hpp"

namespace spiralcap {

using Point2 = std::array<double, 2>;

struct NelderMeadOptions {
    double tol_x = 1e-3;  // simplex diameter
    double tol_f = 1e-6;  // value spread
    int max_iter = 200;
};

struct NelderMeadResult {
    Point2 best{};
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Downhill-simplex minimization in two variables with the standard
/// coefficients (reflection 1, expansion 2, contraction 0.5, shrink 0.5).
/// Deterministic: ties are broken by vertex index. Throws ConfigError for
/// a degenerate initial simplex.
NelderMeadResult nelder_mead(const std::function<double(const Point2&)>& objective,
                             const std::array<Point2, 3>& initial_simplex,
                             const NelderMeadOptions& opts = {});

struct SensitivityEvaluation {
    double nu = 0.0;
    double d = 0.0;           // cross-section plate width
    double sensitivity = 0.0;
    bool guarded = false;     // width/frequency guard hit, no solve performed
    bool cached = false;      // served from the (nu, d) cache
    bool failed = false;      // solver failure, scored as sensitivity 0
};

struct SensitivityOptimum {
    double nu = 0.0;
    double d_cross = 0.0;      // optimal width in the cross-section
    double d_along = 0.0;      // same width measured along the wound stripe
    double sensitivity = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<SensitivityEvaluation> evaluations;  // audit trail, call order
};

/// Maximize E_in/E_total over (nu, d) with d interpreted as the
/// cross-section plate width (fixed_cross_section solves). The objective
/// scores 0 for d <= 0.02, for plate angles past pi, and for negative
/// frequencies, without running a solve. Evaluations are cached on (nu, d)
/// rounded to 1e-9 so shrink steps do not repeat solves, and tol_x is
/// floored at the plate-width quantum of the angular grid. Throws
/// SolverError when not a single evaluation produced a solved field.
SensitivityOptimum optimize_sensitivity(const CapacitorConfig& base,
                                        const NelderMeadOptions& opts = {});

}  // namespace spiralcap
