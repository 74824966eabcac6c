#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stieltjes {

enum class ErrorKind {
  InvalidArgument,
  NotHermitian,
  NotPsd,
  NonFiniteKernel,
  DegenerateMap,
  NonPsdDensity,
  PoleProximity,
  DimensionMismatch,
  IllegalConversion,
  UnsupportedPath,
  UnsupportedKind,
  NotAnAtom,
  NoConvergence,
  ClassMismatch,
  EvaluationFailed,
  PreconditionUnmet,
  InconsistentEquivalence,
  RankInstability,
  ShiftNotPsd,
  ParseError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-code logic) can dispatch on it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace stieltjes
