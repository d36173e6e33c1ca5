#pragma once

#include <stdexcept>
#include <string>

namespace spde_parareal {

/// Argument outside the mathematical domain of an operation (p = 0, t < 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Inconsistent discretization or run configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Convergence-order regression could not be carried out.
class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace spde_parareal
