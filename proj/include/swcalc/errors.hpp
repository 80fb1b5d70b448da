#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace swcalc {

enum class ErrorKind {
  BasisMismatch,
  InexactDivision,
  DivisionByZero,
  UnknownVariable,
  SyntaxError,
  InvalidDiagram,
  IndexOutOfRange,
  ResourceLimit,
  NotAKnot,
  InvalidParameters,
  MissingLabel,
  NonIntegralResult,
  NotSimplyConnected,
  RegimeError,
  SimpleTypeRequired,
  NotSymmetric,
  NotTaut,
  MissingIntersectionData,
  InconsistentLifts,
  NonIntegralDimension,
  ChamberMismatch,
  NotComputable,
  TypeOdd,
  OutOfBand,
  NameError,
  KindError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries one of the kinds above so the
// CLI and the tests can dispatch on it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace swcalc
