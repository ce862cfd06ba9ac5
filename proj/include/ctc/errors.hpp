#pragma once

#include <stdexcept>
#include <string>

namespace ctc {

/// A field and a grid (or two fields) that do not share the same discretization.
struct GridMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A linear or nonlinear solve that could not be completed (zero pivot,
/// iteration budget exhausted, bracket failure).
struct SolverFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A runtime check of a structural property (positivity, mass conservation,
/// maximum principle, ...) failed. Signals scheme instability, not a bug in
/// the caller's data.
struct InvariantViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ctc
