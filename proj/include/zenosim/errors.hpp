#pragma once

#include <stdexcept>
#include <string>

namespace zenosim {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad physical or numerical input (non-positive mass, N < 1, ...).
struct InvalidParameterError : Error {
    using Error::Error;
};

// Schedule construction produced an inconsistent profile, e.g. the tunnel
// phase already exceeds the requested final velocity.
struct InvalidScheduleError : Error {
    using Error::Error;
};

// Two objects that must share a basis do not.
struct DimensionError : Error {
    using Error::Error;
};

// Eigensolver, integrator or convergence failure.
struct NumericalError : Error {
    using Error::Error;
};

// Curve post-processing cannot proceed (too few points, empty window).
struct FitError : Error {
    using Error::Error;
};

// Strict config parsing / validation.
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace zenosim
