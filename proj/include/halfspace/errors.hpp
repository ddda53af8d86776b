#pragma once

#include <stdexcept>
#include <string>

namespace halfspace {

/// Invalid input: out-of-range parameter, malformed file, non-commensurate grid.
/// The CLI maps this to exit code 2.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation ran but could not deliver its contract (step budget exhausted,
/// route mismatch, bracket failure). The CLI maps this to exit code 1.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An object handed to a checker violates its own type invariants.
class InvariantViolation : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace halfspace
