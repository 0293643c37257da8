#pragma once

#include <stdexcept>
#include <string>

namespace qsat12 {

enum class Errc {
  OutOfRangeVar,
  DuplicateExistentialAtomInClause,
  WrongBlockShape,
  ParseError,
  ShapeError,
  LTooLarge,
  ProbabilityOutOfRange,
  RankOutOfRange,
  AssignmentLengthMismatch,
  UniversalBlockTooLarge,
  InstanceTooLarge,
  InvalidCertificate,
  SearchBudgetExceeded,
  InvalidWitness,
  BadLength,
  KOutOfRange,
  IndexTooLarge,
  DomainError,
  InternalMismatch,
  NonPositiveAlpha,
  TooFewClauses,
  EmptyInput,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace qsat12
