#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace betaspec {

enum class ErrorKind {
  Precondition,
  AmbiguousDigit,
  InsufficientDigits,
  InadmissibleWord,
  DomainError,
  NearPole,
  TooLarge,
  BoundaryZero,
  NonConvergence,
  BranchLoss,
  DegenerateOrbit,
  NotSimple,
  DegenerateBreakpoints,
  Underflow,
  VerificationFailure,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Precondition: return "Precondition";
    case ErrorKind::AmbiguousDigit: return "AmbiguousDigit";
    case ErrorKind::InsufficientDigits: return "InsufficientDigits";
    case ErrorKind::InadmissibleWord: return "InadmissibleWord";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::NearPole: return "NearPole";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::BoundaryZero: return "BoundaryZero";
    case ErrorKind::NonConvergence: return "NonConvergence";
    case ErrorKind::BranchLoss: return "BranchLoss";
    case ErrorKind::DegenerateOrbit: return "DegenerateOrbit";
    case ErrorKind::NotSimple: return "NotSimple";
    case ErrorKind::DegenerateBreakpoints: return "DegenerateBreakpoints";
    case ErrorKind::Underflow: return "Underflow";
    case ErrorKind::VerificationFailure: return "VerificationFailure";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::Precondition, what);
}

}  // namespace betaspec
