#include "cochoice/errors.hpp"

namespace cochoice {

std::string_view to_string(ErrorCode c) {
  switch (c) {
    case ErrorCode::UnboundVariable: return "UnboundVariable";
    case ErrorCode::UnboundNameVariable: return "UnboundNameVariable";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::NonFunctionApplication: return "NonFunctionApplication";
    case ErrorCode::NonForallApplication: return "NonForallApplication";
    case ErrorCode::FixBodyNotLambda: return "FixBodyNotLambda";
    case ErrorCode::IllFormed: return "IllFormed";
    case ErrorCode::BuiltinNotCheckable: return "BuiltinNotCheckable";
    case ErrorCode::BuiltinNotCompilable: return "BuiltinNotCompilable";
    case ErrorCode::EffectAlignError: return "EffectAlignError";
    case ErrorCode::EffectCoverageError: return "EffectCoverageError";
    case ErrorCode::DisjointnessViolation: return "DisjointnessViolation";
    case ErrorCode::NonClosedResidual: return "NonClosedResidual";
    case ErrorCode::EnvNotWellFormed: return "EnvNotWellFormed";
  }
  return "Unknown";
}

}  // namespace cochoice
