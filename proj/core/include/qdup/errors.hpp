#pragma once

#include <stdexcept>
#include <string>

namespace qdup {

enum class Errc {
  DivisionByZero,
  FieldMismatch,
  NotPrime,
  Reducible,
  CharTwo,
  CharMismatch,
  ZeroInput,
  ParseError,
  DimensionMismatch,
  BudgetExceeded,
  MalformedQuiver,
  OutOfRange,
  NotOneCycle,
  RootsNotDistinct,
  NotInvolutive,
  NotMorphism,
  InvalidPair,
  InvalidColoration,
  CertificationFailed,
  AxiomViolated,
  DegenerateParameter,
  ZeroParameter,
  AlphaZero,
  ParameterIsSquare,
  Unsupported,
};

const char* errc_name(Errc code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace qdup
