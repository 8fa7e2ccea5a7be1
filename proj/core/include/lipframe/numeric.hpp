#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace lipframe {

using Vector = std::vector<double>;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Deterministic pairwise (tree) summation. The grouping depends only on the
/// length of the input, so results are reproducible across run configurations.
double tree_sum(std::span<const double> values);

/// Component-wise tree summation of vectors of possibly different lengths;
/// shorter vectors are treated as zero-padded.
Vector tree_sum(std::span<const Vector> vectors);

/// (sum |v_i|^r)^(1/r); r may be +infinity.
double lp_norm(std::span<const double> v, double r);

/// Conjugate exponent r/(r-1), with 1 <-> infinity.
double conjugate_exponent(double r);

Vector subtract(std::span<const double> a, std::span<const double> b);
Vector add(std::span<const double> a, std::span<const double> b);
Vector scaled(std::span<const double> a, double alpha);

/// SplitMix-seeded 64-bit generator with a fixed real mapping, so sampled
/// values do not depend on the standard library's distribution code.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  /// Uniform in [0, 1).
  double uniform();
  double uniform(double lo, double hi);
  /// Uniform in {0, ..., n-1}; n > 0.
  std::size_t index(std::size_t n);

 private:
  std::uint64_t state_[4];
};

}  // namespace lipframe
