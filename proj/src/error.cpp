#include "rescert/error.hpp"

namespace rescert {

std::string_view error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DivisionByZero: return "DivisionByZero";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::RegistryMismatch: return "RegistryMismatch";
    case ErrorKind::UnknownVariable: return "UnknownVariable";
    case ErrorKind::NotDivisible: return "NotDivisible";
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::BothConstant: return "BothConstant";
    case ErrorKind::IdentityFails: return "IdentityFails";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::DegeneratePrime: return "DegeneratePrime";
    case ErrorKind::StepFailed: return "StepFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UndefinedName: return "UndefinedName";
    case ErrorKind::UnknownProgram: return "UnknownProgram";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::EmptyS1: return "EmptyS1";
    case ErrorKind::LinearityViolation: return "LinearityViolation";
    case ErrorKind::WrongKind: return "WrongKind";
    case ErrorKind::BadType: return "BadType";
    case ErrorKind::SchemaMismatch: return "SchemaMismatch";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace rescert
