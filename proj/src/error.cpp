#include "cplab/error.hpp"

namespace cplab {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::NonSquare: return "NonSquare";
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::InvalidBasis: return "InvalidBasis";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::NonTraceless: return "NonTraceless";
    case ErrorCode::NonTracelessJump: return "NonTracelessJump";
    case ErrorCode::NotCompletelyPositive: return "NotCompletelyPositive";
    case ErrorCode::NegativeTime: return "NegativeTime";
    case ErrorCode::InconsistentVerdict: return "InconsistentVerdict";
    case ErrorCode::NotOrthogonal: return "NotOrthogonal";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::TraceConditionViolated: return "TraceConditionViolated";
    case ErrorCode::DegenerateW: return "DegenerateW";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace cplab
