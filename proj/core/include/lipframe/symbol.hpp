#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "lipframe/numeric.hpp"

namespace lipframe {

/// The scalar weights lambda_0, lambda_1, ... of a multiplier.
///
/// A symbol is `scale * family(i) + overlay[i]`, restricted to the index window
/// [begin, end). The family is one of a few analytic sequences whose sup, tail
/// sup and p-norms are known in closed form; the overlay is a finitely
/// supported correction. Index i corresponds to lambda_{i+1} in 1-based
/// notation, so `power(1)` is 1, 1/2, 1/3, ...
class SymbolSequence {
 public:
  enum class Family { zero, constant, power, geometric };
  enum class Class { ell_infty, c_zero, ell_p };

  static SymbolSequence zero() { return SymbolSequence(); }
  static SymbolSequence literal(Vector values);
  static SymbolSequence constant(double c);
  /// lambda_n = n^(-s), s > 0.
  static SymbolSequence power(double s);
  static SymbolSequence one_over_n() { return power(1.0); }
  /// lambda_n = r^n, |r| < 1.
  static SymbolSequence geometric(double r);

  double operator[](std::size_t i) const;

  /// sup_{i >= N} |lambda_i|; nonincreasing in N.
  double tail_sup(std::size_t N) const;
  double sup_norm() const { return tail_sup(0); }
  /// Empty when the sequence is not in l^p (or p-norm is not available in
  /// closed form).
  std::optional<double> p_norm(double p) const;
  /// Smallest L with lambda_i = 0 for all i >= L, when the support is finite.
  std::optional<std::size_t> support_end() const;
  Class symbol_class() const;
  bool is_identically_zero() const;

  /// this + delta on the given indices (delta[i] added to lambda_i).
  SymbolSequence perturbed(const Vector& delta) const;
  /// Zero for indices >= m.
  SymbolSequence truncated(std::size_t m) const;
  /// Zero for indices < m.
  SymbolSequence tail_from(std::size_t m) const;
  SymbolSequence scaled(double alpha) const;

  /// a + b, when both share the same family and window (or one has no
  /// family part). Empty otherwise.
  friend std::optional<SymbolSequence> sum(const SymbolSequence& a, const SymbolSequence& b);
  /// a - b, under the same conditions as `sum`.
  friend std::optional<SymbolSequence> difference(const SymbolSequence& a, const SymbolSequence& b);

  std::string describe() const;

 private:
  SymbolSequence() = default;

  bool family_vanishes() const { return family_ == Family::zero || scale_ == 0.0; }
  double family_value(std::size_t i) const;
  bool in_window(std::size_t i) const { return i >= begin_ && (!end_ || i < *end_); }
  /// Sum over [from, end) of |scale * family(i)|^p, when finite.
  std::optional<double> family_power_sum(std::size_t from, double p) const;

  Family family_ = Family::zero;
  double param_ = 0.0;
  double scale_ = 1.0;
  Vector overlay_;
  std::size_t begin_ = 0;
  std::optional<std::size_t> end_;
};

const char* to_string(SymbolSequence::Class c);

}  // namespace lipframe
