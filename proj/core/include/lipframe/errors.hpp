#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipframe {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Axiom { positivity, symmetry, triangle };

const char* to_string(Axiom axiom);

/// A metric axiom failed. `witness` holds the offending point indices
/// (two for positivity/symmetry, three for the triangle inequality).
class AxiomViolation : public Error {
 public:
  AxiomViolation(Axiom kind, std::vector<std::size_t> witness, double excess);

  Axiom kind() const { return kind_; }
  const std::vector<std::size_t>& witness() const { return witness_; }
  double excess() const { return excess_; }

 private:
  Axiom kind_;
  std::vector<std::size_t> witness_;
  double excess_;
};

#define LIPFRAME_DEFINE_ERROR(Name)    \
  class Name : public Error {          \
   public:                             \
    using Error::Error;                \
  }

LIPFRAME_DEFINE_ERROR(InvalidArgument);
LIPFRAME_DEFINE_ERROR(InvalidInterval);
LIPFRAME_DEFINE_ERROR(InvalidExponent);
LIPFRAME_DEFINE_ERROR(InvalidDimensions);
LIPFRAME_DEFINE_ERROR(ExhaustiveOnInfinite);
LIPFRAME_DEFINE_ERROR(ZeroDistance);
LIPFRAME_DEFINE_ERROR(NotPointed);
LIPFRAME_DEFINE_ERROR(NonScalarFunctional);
LIPFRAME_DEFINE_ERROR(NoTailBound);
LIPFRAME_DEFINE_ERROR(ToleranceUnreachable);
LIPFRAME_DEFINE_ERROR(EmptyCoefficients);
LIPFRAME_DEFINE_ERROR(DegeneratePoints);
LIPFRAME_DEFINE_ERROR(NonpositiveBound);
LIPFRAME_DEFINE_ERROR(MissingPNorm);
LIPFRAME_DEFINE_ERROR(InfinitePerturbation);
LIPFRAME_DEFINE_ERROR(NotRiesz);
LIPFRAME_DEFINE_ERROR(SymbolsEqual);

#undef LIPFRAME_DEFINE_ERROR

/// An empirical quantity exceeded a declared analytic constant. The observed
/// value and the declared bound are kept so callers can still report them.
class DeclaredBoundViolated : public Error {
 public:
  DeclaredBoundViolated(const std::string& what, double observed, double declared)
      : Error(what), observed_(observed), declared_(declared) {}

  double observed() const { return observed_; }
  double declared() const { return declared_; }

 private:
  double observed_;
  double declared_;
};

/// The empirical Lipschitz norm of an operator exceeded b*d*||lambda||_inf.
class BoundViolated : public DeclaredBoundViolated {
 public:
  using DeclaredBoundViolated::DeclaredBoundViolated;
};

}  // namespace lipframe
