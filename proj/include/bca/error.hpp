#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace bca {

enum class ErrorCode {
  ParseError,
  NonIncreasingSupport,
  NonPositiveMass,
  NegativeValue,
  MassNotOne,
  JointMarginalMismatch,
  JointArityError,
  ShapeMismatch,
  NotMonotone,
  NegativeEps,
  CorrelatedUnsupported,
  NegativeLambda,
  TargetOutOfRange,
  ArityError,
  NonPositiveBound,
  NonPositiveDelta,
  NonPositiveEps,
  LimitExceeded,
  NotDescending,
  TooSmall,
  TooLarge,
  NotBinary,
  NotAMatching,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace bca
