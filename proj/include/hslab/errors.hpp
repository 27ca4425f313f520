#pragma once

#include <stdexcept>
#include <string>

namespace hslab {

// Initial data violates a hypothesis the asymptotic theory needs
// (e.g. min(m0 + 1) dropping below the configured margin).
class HypothesisError : public std::runtime_error {
public:
    explicit HypothesisError(const std::string& what) : std::runtime_error(what) {}
};

// A computed quantity failed one of its internal consistency checks.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// The time evolution left the admissible state space (gradient blow-up).
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(const std::string& what, double t_last) : std::runtime_error(what), t_last_valid(t_last) {}
    double t_last_valid;
};

// Bad run configuration or CLI usage.
class ConfigError : public std::invalid_argument {
public:
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace hslab
