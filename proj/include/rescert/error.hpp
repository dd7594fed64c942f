#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rescert {

enum class ErrorKind {
  NotPrime,
  DivisionByZero,
  DomainError,
  RegistryMismatch,
  UnknownVariable,
  NotDivisible,
  BadReduction,
  BothConstant,
  IdentityFails,
  BudgetExceeded,
  DegeneratePrime,
  StepFailed,
  ParseError,
  UndefinedName,
  UnknownProgram,
  BadPrime,
  EmptyS1,
  LinearityViolation,
  WrongKind,
  BadType,
  SchemaMismatch,
  Io,
};

std::string_view error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rescert
