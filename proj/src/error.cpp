#include "psplit/error.hpp"

#include <sstream>

namespace psplit {

std::string_view to_string(ErrorCode code)
{
    switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::DecompositionFailure: return "DecompositionFailure";
    case ErrorCode::NotProper: return "NotProper";
    case ErrorCode::DecompositionMismatch: return "DecompositionMismatch";
    case ErrorCode::HypothesisUnmet: return "HypothesisUnmet";
    case ErrorCode::DifferentA: return "DifferentA";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Parse: return "Parse";
    }
    return "Unknown";
}

namespace {

std::string not_proper_message(double range_residual, double null_residual, double tol)
{
    std::ostringstream os;
    os << "splitting is not proper:";
    if (range_residual > tol)
        os << " range differs (|AA+ - UU+| = " << range_residual << ")";
    if (null_residual > tol)
        os << " null space differs (|A+A - U+U| = " << null_residual << ")";
    os << " [tolerance " << tol << "]";
    return os.str();
}

} // namespace

NotProperError::NotProperError(double range_residual, double null_residual, double tolerance)
    : Error(ErrorCode::NotProper, not_proper_message(range_residual, null_residual, tolerance)),
      range_residual_(range_residual),
      null_residual_(null_residual),
      tolerance_(tolerance)
{
}

DecompositionMismatchError::DecompositionMismatchError(double residual)
    : Error(ErrorCode::DecompositionMismatch,
            "A != P - R + S (max deviation " + std::to_string(residual) + ")"),
      residual_(residual)
{
}

} // namespace psplit
