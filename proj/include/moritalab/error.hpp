#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace moritalab {

enum class ErrorKind {
  InvalidArgument,
  InfiniteQuotient,
  RingMismatch,
  NotBalanced,
  UnitDegenerate,
  SearchBudgetExceeded,
  NotComposable,
  Singular,
  NotPSD,
  NotFaithful,
  AlgebraMismatch,
  NotHomomorphism,
  DimensionCap,
  ParseError,
  TaskError,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Single exception type for the library; callers branch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InfiniteQuotient: return "InfiniteQuotient";
    case ErrorKind::RingMismatch: return "RingMismatch";
    case ErrorKind::NotBalanced: return "NotBalanced";
    case ErrorKind::UnitDegenerate: return "UnitDegenerate";
    case ErrorKind::SearchBudgetExceeded: return "SearchBudgetExceeded";
    case ErrorKind::NotComposable: return "NotComposable";
    case ErrorKind::Singular: return "Singular";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::NotFaithful: return "NotFaithful";
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::NotHomomorphism: return "NotHomomorphism";
    case ErrorKind::DimensionCap: return "DimensionCap";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::TaskError: return "TaskError";
  }
  return "Unknown";
}

}  // namespace moritalab
