#include "bca/error.hpp"

namespace bca {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonIncreasingSupport: return "NonIncreasingSupport";
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::NegativeValue: return "NegativeValue";
    case ErrorCode::MassNotOne: return "MassNotOne";
    case ErrorCode::JointMarginalMismatch: return "JointMarginalMismatch";
    case ErrorCode::JointArityError: return "JointArityError";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NotMonotone: return "NotMonotone";
    case ErrorCode::NegativeEps: return "NegativeEps";
    case ErrorCode::CorrelatedUnsupported: return "CorrelatedUnsupported";
    case ErrorCode::NegativeLambda: return "NegativeLambda";
    case ErrorCode::TargetOutOfRange: return "TargetOutOfRange";
    case ErrorCode::ArityError: return "ArityError";
    case ErrorCode::NonPositiveBound: return "NonPositiveBound";
    case ErrorCode::NonPositiveDelta: return "NonPositiveDelta";
    case ErrorCode::NonPositiveEps: return "NonPositiveEps";
    case ErrorCode::LimitExceeded: return "LimitExceeded";
    case ErrorCode::NotDescending: return "NotDescending";
    case ErrorCode::TooSmall: return "TooSmall";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotBinary: return "NotBinary";
    case ErrorCode::NotAMatching: return "NotAMatching";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

}  // namespace bca
