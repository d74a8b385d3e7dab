#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fflab {

enum class ErrorCode {
  OwnerMismatch,
  DivisionByZero,
  SearchExhausted,
  UndefinedGcd,
  DegreeTooSmall,
  NotPrime,
  NotAFactorization,
  NotPrimitive,
  ZeroInput,
  InternalError,
  UseCompositum,
  TooLarge,
  NotASubgroup,
  NotADivisor,
  RamifiedCase,
  WildOrInseparableCase,
  DegeneratedLeadingCoefficient,
  UnknownPredicate,
  NoShadow,
  PreconditionFailed,
  NestingTooDeep,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// that the command-line front end can map it onto a stable error object.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace fflab
