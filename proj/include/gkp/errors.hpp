#pragma once

#include <stdexcept>
#include <string>

namespace gkp {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A field contains NaN or Inf where finite values are required.
struct InvalidFieldError : Error {
    using Error::Error;
};

// Spectral coefficients violate Hermitian symmetry beyond tolerance.
struct AsymmetryError : Error {
    using Error::Error;
};

// Time stepping produced a non-finite state; carries the step index.
struct DivergenceError : Error {
    DivergenceError(const std::string& msg, long step)
        : Error(msg), step_index(step) {}
    long step_index;
};

// real_power called with an even-denominator exponent.
struct UnsupportedExponentError : Error {
    using Error::Error;
};

// Hessian at the pinned minimum is numerically singular.
struct DegenerateMinimumError : Error {
    using Error::Error;
};

struct FitDomainError : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct SnapshotError : Error {
    using Error::Error;
};

}  // namespace gkp
