#pragma once

#include <stdexcept>
#include <string>

namespace kirchhoff {

/// Adaptive quadrature failed to reach the requested tolerance.
struct QuadratureError : std::runtime_error {
    explicit QuadratureError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The requested (k, d) pair has no known closed form.
struct NoClosedFormError : std::runtime_error {
    explicit NoClosedFormError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The index q is not reachable from a recursion base case by steps of p+1.
struct UnsupportedIndexError : std::runtime_error {
    explicit UnsupportedIndexError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Operation is undefined in the degenerate case q - p + 1 = 0.
struct DegenerateCaseError : std::runtime_error {
    explicit DegenerateCaseError(const std::string& msg) : std::runtime_error(msg) {}
};

/// A consistency oracle detected a contradiction (wrong amplitude, blow-up, ...).
struct OracleFailure : std::runtime_error {
    explicit OracleFailure(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace kirchhoff
