#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace toytheory {

enum class ErrorCode {
  DimensionMismatch,
  Overflow,
  TooLarge,
  NotIsotropic,
  UnsupportedShape,
  IncompatibleOutcome,
  NotAPartition,
  NotInV,
  PartiallyKnownObservable,
  NotIsotropicChoice,
  DegenerateChoice,
  BadFamilyShape,
  NotSupportedModulus,
  SearchSpaceTooLarge,
  BadInjection,
  InvalidMap,
  IndexError,
  NotD2,
  NotRephasing,
  NotPure,
  InconsistentOutcome,
  WrongQuestionCount,
  InvalidGroup,
  InvalidArgument,
};

std::string_view error_name(ErrorCode code);

// Every domain failure in the library is a ToyError; the code names the
// condition and is what the CLI reports in its "error" field.
class ToyError : public std::runtime_error {
 public:
  ToyError(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ModVector;

class PartiallyKnownError : public ToyError {
 public:
  PartiallyKnownError(std::vector<ModVector> witness, const std::string& message);
  const std::vector<ModVector>& witness() const noexcept { return witness_; }

 private:
  std::vector<ModVector> witness_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace toytheory
