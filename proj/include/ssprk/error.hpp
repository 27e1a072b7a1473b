#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssprk {

enum class ErrorCode {
  InvalidArgument,
  DimensionMismatch,
  UnsupportedOrder,
  NotThirdOrder,
  InvalidRange,
  SingularSystem,
  NotAbsolutelyMonotonic,
  NegativeCoefficients,
  InfeasibleRadius,
  IndexError,
  ZeroPivot,
  NotCanonical,
  UnsupportedClass,
  DegenerateWeights,
  OrderViolation,
  MonotonicityViolation,
  NoFeasiblePoint,
  UnknownMethod,
  EmptyGrid,
  NonFiniteState,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::UnsupportedOrder: return "UnsupportedOrder";
    case ErrorCode::NotThirdOrder: return "NotThirdOrder";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::NotAbsolutelyMonotonic: return "NotAbsolutelyMonotonic";
    case ErrorCode::NegativeCoefficients: return "NegativeCoefficients";
    case ErrorCode::InfeasibleRadius: return "InfeasibleRadius";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::ZeroPivot: return "ZeroPivot";
    case ErrorCode::NotCanonical: return "NotCanonical";
    case ErrorCode::UnsupportedClass: return "UnsupportedClass";
    case ErrorCode::DegenerateWeights: return "DegenerateWeights";
    case ErrorCode::OrderViolation: return "OrderViolation";
    case ErrorCode::MonotonicityViolation: return "MonotonicityViolation";
    case ErrorCode::NoFeasiblePoint: return "NoFeasiblePoint";
    case ErrorCode::UnknownMethod: return "UnknownMethod";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::NonFiniteState: return "NonFiniteState";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Domain error raised by every ssprk operation. The code identifies the
/// failure class; the message carries the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ssprk
