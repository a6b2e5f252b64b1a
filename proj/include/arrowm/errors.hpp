#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace arrowm {

// Invalid numeric argument (non-positive energy, m outside (0,1), ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Mismatched grids, channel sets or frequency layouts.
class StructuralError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Eigensolver or transform failure.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A physics scenario that cannot be run as configured (tail mass, output dir).
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::runtime_error {
public:
    // line 0: the error concerns the configuration as a whole
    ConfigError(std::size_t line, const std::string& what)
        : std::runtime_error(line == 0 ? "config: " + what
                                       : "config line " + std::to_string(line) + ": " + what),
          line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace arrowm
