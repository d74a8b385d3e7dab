#include "fflab/error.hpp"

namespace fflab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OwnerMismatch: return "OwnerMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::SearchExhausted: return "SearchExhausted";
    case ErrorCode::UndefinedGcd: return "UndefinedGcd";
    case ErrorCode::DegreeTooSmall: return "DegreeTooSmall";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::NotAFactorization: return "NotAFactorization";
    case ErrorCode::NotPrimitive: return "NotPrimitive";
    case ErrorCode::ZeroInput: return "ZeroInput";
    case ErrorCode::InternalError: return "InternalError";
    case ErrorCode::UseCompositum: return "UseCompositum";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotASubgroup: return "NotASubgroup";
    case ErrorCode::NotADivisor: return "NotADivisor";
    case ErrorCode::RamifiedCase: return "RamifiedCase";
    case ErrorCode::WildOrInseparableCase: return "WildOrInseparableCase";
    case ErrorCode::DegeneratedLeadingCoefficient: return "DegeneratedLeadingCoefficient";
    case ErrorCode::UnknownPredicate: return "UnknownPredicate";
    case ErrorCode::NoShadow: return "NoShadow";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::NestingTooDeep: return "NestingTooDeep";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace fflab
