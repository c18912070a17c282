#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cochoice/name.hpp"

namespace cochoice {

enum class ErrorCode : unsigned char {
  UnboundVariable,
  UnboundNameVariable,
  TypeMismatch,
  NonFunctionApplication,
  NonForallApplication,
  FixBodyNotLambda,
  IllFormed,
  BuiltinNotCheckable,
  BuiltinNotCompilable,
  EffectAlignError,
  EffectCoverageError,
  DisjointnessViolation,
  NonClosedResidual,
  EnvNotWellFormed,
};

std::string_view to_string(ErrorCode c);

/// Raised by both type checkers. `witness` is set for effect errors when a
/// concrete offending name was found.
class TypeError : public std::runtime_error {
 public:
  TypeError(ErrorCode code, const std::string& msg, std::optional<Name> witness = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + msg), code_(code), witness_(std::move(witness)) {}

  ErrorCode code() const { return code_; }
  const std::optional<Name>& witness() const { return witness_; }

 private:
  ErrorCode code_;
  std::optional<Name> witness_;
};

class CompileError : public std::runtime_error {
 public:
  explicit CompileError(const std::string& msg)
      : std::runtime_error(std::string(to_string(ErrorCode::BuiltinNotCompilable)) + ": " + msg) {}
  ErrorCode code() const { return ErrorCode::BuiltinNotCompilable; }
};

/// A harness check was called on inputs outside its contract.
class PreconditionViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cochoice
