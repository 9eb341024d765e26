#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace drinfeld {

enum class ErrorKind {
  NonPrimeCharacteristic,
  ReducibleModulus,
  InvalidModulus,
  DivisionByZero,
  LevelMismatch,
  InvalidDegree,
  WrongLength,
  ArityMismatch,
  ZeroLeadingCoefficient,
  InseparableTorsion,
  SearchCapExceeded,
  NotSquarefree,
  SearchBudget,
  PointNotInModule,
  NonMonic,
  RationalityFailure,
  NotTorsionPoint,
  ConfigurationTooLarge,
  InvalidArgument,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (the CLI in particular) can map it to an exit status.
class MathError : public std::runtime_error {
 public:
  MathError(ErrorKind kind, const std::string& message);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] void raise(ErrorKind kind, const std::string& message);

}  // namespace drinfeld
