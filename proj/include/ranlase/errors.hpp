#pragma once

#include <stdexcept>
#include <string>

namespace ranlase {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid argument or out-of-validity parameter.
struct DomainError : Error {
    using Error::Error;
};

/// Amplification rate at or above the laser threshold.
struct ThresholdError : Error {
    using Error::Error;
};

struct IoError : Error {
    using Error::Error;
};

/// Quadrature or Monte Carlo run failed to converge within its budget.
struct ConvergenceError : Error {
    using Error::Error;
};

/// Ill-conditioned linear solve inside a scattering-matrix composition.
struct ConditioningError : Error {
    using Error::Error;
};

/// Requested spectral moment does not exist (unbounded amplifying support).
struct InfiniteMomentError : Error {
    using Error::Error;
};

/// Short-time model whose 1 - S S^dag does not factorize into phi(omega) * K.
struct UnsupportedModelError : Error {
    using Error::Error;
};

}  // namespace ranlase
