#pragma once

#include <stdexcept>
#include <string>

namespace sdfeas {

enum class ErrorCode {
  DimensionMismatch,
  NotSymmetric,
  NotTriangular,
  NotPositiveDefinite,
  NotInterior,
  InvalidProblem,
  ZeroRhs,
  DegenerateLmi,
  GenerationFailed,
  CannotSatisfyB122,
  NotIterateForm,
  SingularNewtonSystem,
  NotInNeighborhood,
  StepOrderViolation,
  CorrectorEscape,
  NotDualFeasible,
  InvalidParams,
  InsufficientTrace,
  EquivalenceViolation,
  ParseError,
  NonZeroCost,
};

const char* to_string(ErrorCode code);

/// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::NotTriangular: return "NotTriangular";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NotInterior: return "NotInterior";
    case ErrorCode::InvalidProblem: return "InvalidProblem";
    case ErrorCode::ZeroRhs: return "ZeroRhs";
    case ErrorCode::DegenerateLmi: return "DegenerateLmi";
    case ErrorCode::GenerationFailed: return "GenerationFailed";
    case ErrorCode::CannotSatisfyB122: return "CannotSatisfyB122";
    case ErrorCode::NotIterateForm: return "NotIterateForm";
    case ErrorCode::SingularNewtonSystem: return "SingularNewtonSystem";
    case ErrorCode::NotInNeighborhood: return "NotInNeighborhood";
    case ErrorCode::StepOrderViolation: return "StepOrderViolation";
    case ErrorCode::CorrectorEscape: return "CorrectorEscape";
    case ErrorCode::NotDualFeasible: return "NotDualFeasible";
    case ErrorCode::InvalidParams: return "InvalidParams";
    case ErrorCode::InsufficientTrace: return "InsufficientTrace";
    case ErrorCode::EquivalenceViolation: return "EquivalenceViolation";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::NonZeroCost: return "NonZeroCost";
  }
  return "Unknown";
}

}  // namespace sdfeas
