#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace psplit {

enum class ErrorCode {
    NonFinite,
    NotSquare,
    ShapeMismatch,
    DecompositionFailure,
    NotProper,
    DecompositionMismatch,
    HypothesisUnmet,
    DifferentA,
    NotInvertible,
    InvalidConfig,
    Parse,
};

std::string_view to_string(ErrorCode code);

/// Base error for everything the library throws.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Raised when a candidate splitting does not preserve range and null space.
/// Both projector residuals are kept so callers can tell which condition broke.
class NotProperError : public Error {
public:
    NotProperError(double range_residual, double null_residual, double tolerance);

    double range_residual() const noexcept { return range_residual_; }
    double null_residual() const noexcept { return null_residual_; }
    bool range_failed() const noexcept { return range_residual_ > tolerance_; }
    bool null_failed() const noexcept { return null_residual_ > tolerance_; }

private:
    double range_residual_;
    double null_residual_;
    double tolerance_;
};

/// A != P - R + S; carries the largest entrywise deviation.
class DecompositionMismatchError : public Error {
public:
    explicit DecompositionMismatchError(double residual);

    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

} // namespace psplit
