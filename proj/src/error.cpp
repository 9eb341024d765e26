#include "drinfeld/error.hpp"

namespace drinfeld {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPrimeCharacteristic: return "NonPrimeCharacteristic";
    case ErrorKind::ReducibleModulus: return "ReducibleModulus";
    case ErrorKind::InvalidModulus: return "InvalidModulus";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::LevelMismatch: return "LevelMismatch";
    case ErrorKind::InvalidDegree: return "InvalidDegree";
    case ErrorKind::WrongLength: return "WrongLength";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ZeroLeadingCoefficient: return "ZeroLeadingCoefficient";
    case ErrorKind::InseparableTorsion: return "InseparableTorsion";
    case ErrorKind::SearchCapExceeded: return "SearchCapExceeded";
    case ErrorKind::NotSquarefree: return "NotSquarefree";
    case ErrorKind::SearchBudget: return "SearchBudget";
    case ErrorKind::PointNotInModule: return "PointNotInModule";
    case ErrorKind::NonMonic: return "NonMonic";
    case ErrorKind::RationalityFailure: return "RationalityFailure";
    case ErrorKind::NotTorsionPoint: return "NotTorsionPoint";
    case ErrorKind::ConfigurationTooLarge: return "ConfigurationTooLarge";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

MathError::MathError(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

void raise(ErrorKind kind, const std::string& message) { throw MathError(kind, message); }

}  // namespace drinfeld
