#pragma once

#include <stdexcept>
#include <string>

namespace vor {

enum class ErrorKind {
  ReduciblePolynomial,
  NoRootInInterval,
  MultipleRootsInInterval,
  FieldMismatch,
  DimensionMismatch,
  NotInAlgebra,
  IndefiniteWithoutSplittingData,
  PositivityFailure,
  NotPositive,
  ChartMismatch,
  GroupTooLarge,
  NoProgress,
  DirectionNotOutward,
  BudgetExceeded,
  NotWellRounded,
  NonInvertedTreeImpossible,
  NoStabilizerWitness,
  WalkNotClosing,
  RelatorEvaluationFailure,
  AmbiguousCrossing,
  NotAUnit,
  PerturbationBudgetExceeded,
  OrderNotClosed,
  LatticeNotStable,
  ParseError,
  ValidationError,
  Internal,
};

inline const char* to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so that callers (and the
/// CLI exit codes) can tell budget problems from invariant violations.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ReduciblePolynomial: return "ReduciblePolynomial";
    case ErrorKind::NoRootInInterval: return "NoRootInInterval";
    case ErrorKind::MultipleRootsInInterval: return "MultipleRootsInInterval";
    case ErrorKind::FieldMismatch: return "FieldMismatch";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NotInAlgebra: return "NotInAlgebra";
    case ErrorKind::IndefiniteWithoutSplittingData: return "IndefiniteWithoutSplittingData";
    case ErrorKind::PositivityFailure: return "PositivityFailure";
    case ErrorKind::NotPositive: return "NotPositive";
    case ErrorKind::ChartMismatch: return "ChartMismatch";
    case ErrorKind::GroupTooLarge: return "GroupTooLarge";
    case ErrorKind::NoProgress: return "NoProgress";
    case ErrorKind::DirectionNotOutward: return "DirectionNotOutward";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::NotWellRounded: return "NotWellRounded";
    case ErrorKind::NonInvertedTreeImpossible: return "NonInvertedTreeImpossible";
    case ErrorKind::NoStabilizerWitness: return "NoStabilizerWitness";
    case ErrorKind::WalkNotClosing: return "WalkNotClosing";
    case ErrorKind::RelatorEvaluationFailure: return "RelatorEvaluationFailure";
    case ErrorKind::AmbiguousCrossing: return "AmbiguousCrossing";
    case ErrorKind::NotAUnit: return "NotAUnit";
    case ErrorKind::PerturbationBudgetExceeded: return "PerturbationBudgetExceeded";
    case ErrorKind::OrderNotClosed: return "OrderNotClosed";
    case ErrorKind::LatticeNotStable: return "LatticeNotStable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::ValidationError: return "ValidationError";
    case ErrorKind::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace vor
