#pragma once

#include <stdexcept>
#include <string>

namespace tri {

// Invalid argument to a kernel: k = 0, s outside the side, x <= 0 ...
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

// Bad problem parameters (sin beta = 0, inadmissible Poincare data, ...).
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Everything below signals a numerical failure of an otherwise valid request.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ResonanceError : NumericalError {
    using NumericalError::NumericalError;
};

struct RootError : NumericalError {
    using NumericalError::NumericalError;
};

struct DegenerateModeError : NumericalError {
    using NumericalError::NumericalError;
};

struct EliminationError : NumericalError {
    using NumericalError::NumericalError;
};

struct ClassificationError : NumericalError {
    using NumericalError::NumericalError;
};

struct SolvabilityError : NumericalError {
    using NumericalError::NumericalError;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace tri
