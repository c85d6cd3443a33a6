#pragma once

#include <stdexcept>
#include <string>

namespace spiralcap {

/// Invalid physical or discretization parameters: bad geometry, plate
/// overlap, unknown region tag, malformed run configuration.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file; carries the 1-based line number of the offense.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

/// Iterative solver stopped before reaching the requested tolerance.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual)
        : std::runtime_error(what), residual_(residual) {}

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// System cannot be solved at all (e.g. zero diagonal entry).
class SingularError : public std::runtime_error {
public:
    explicit SingularError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace spiralcap
