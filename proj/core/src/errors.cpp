#include "toytheory/errors.hpp"

#include "toytheory/ring_linalg.hpp"

namespace toytheory {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotIsotropic: return "NotIsotropic";
    case ErrorCode::UnsupportedShape: return "UnsupportedShape";
    case ErrorCode::IncompatibleOutcome: return "IncompatibleOutcome";
    case ErrorCode::NotAPartition: return "NotAPartition";
    case ErrorCode::NotInV: return "NotInV";
    case ErrorCode::PartiallyKnownObservable: return "PartiallyKnownObservable";
    case ErrorCode::NotIsotropicChoice: return "NotIsotropicChoice";
    case ErrorCode::DegenerateChoice: return "DegenerateChoice";
    case ErrorCode::BadFamilyShape: return "BadFamilyShape";
    case ErrorCode::NotSupportedModulus: return "NotSupportedModulus";
    case ErrorCode::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
    case ErrorCode::BadInjection: return "BadInjection";
    case ErrorCode::InvalidMap: return "InvalidMap";
    case ErrorCode::IndexError: return "IndexError";
    case ErrorCode::NotD2: return "NotD2";
    case ErrorCode::NotRephasing: return "NotRephasing";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::InconsistentOutcome: return "InconsistentOutcome";
    case ErrorCode::WrongQuestionCount: return "WrongQuestionCount";
    case ErrorCode::InvalidGroup: return "InvalidGroup";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

ToyError::ToyError(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

PartiallyKnownError::PartiallyKnownError(std::vector<ModVector> witness,
                                         const std::string& message)
    : ToyError(ErrorCode::PartiallyKnownObservable, message),
      witness_(std::move(witness)) {}

void fail(ErrorCode code, const std::string& message) {
  throw ToyError(code, message);
}

}  // namespace toytheory
