#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lagidx {

enum class ErrorKind {
  InvalidArgument,
  DimensionMismatch,
  DecompositionFailure,
  NotHermitian,
  NotInjective,
  NotLagrangian,
  NotSymplectic,
  SelectionFailed,
  SingularEpsilon,
  RankDeficient,
  EpsilonDisagreement,
  DualBasisFailure,
  NotInvertible,
  InclusionViolated,
  TransversalityViolated,
  NoCrossing,
  DegenerateCrossing,
  UnresolvedCluster,
  ParseError,
};

std::string_view to_string(ErrorKind kind);

// Every failure raised by the library carries one of the kinds above so that
// front ends can map them onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Thrown by find_crossings when the restricted crossing form is singular;
/// remembers where, so the CLI can report the offending parameter.
class DegenerateCrossingError : public Error {
 public:
  DegenerateCrossingError(double t, const std::string& what)
      : Error(ErrorKind::DegenerateCrossing, what), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

}  // namespace lagidx
