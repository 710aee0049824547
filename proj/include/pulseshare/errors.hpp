#pragma once

#include <stdexcept>
#include <string>

namespace pulseshare {

/// Invalid arguments, mismatched dimensions, malformed configuration.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical guard tripped: truncation mass, boundary leakage, a failed
/// block diagonalization or search. Mapped to exit code 3 by the CLI.
class NumericalGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class CutoffTooSmall : public NumericalGuardError {
public:
    using NumericalGuardError::NumericalGuardError;
};

}  // namespace pulseshare
