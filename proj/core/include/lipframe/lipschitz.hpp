#pragma once

#include <functional>
#include <optional>
#include <string>

#include "lipframe/metric.hpp"
#include "lipframe/numeric.hpp"

namespace lipframe {

/// A real normed space: R^K with an l^r norm, or (when `dimension` is empty)
/// finitely supported real sequences with the l^r norm. Vectors of different
/// lengths are compared by zero padding.
class NormedSpace {
 public:
  static NormedSpace scalars() { return NormedSpace(1, 1.0); }
  static NormedSpace finite(std::size_t dimension, double exponent) { return NormedSpace(dimension, exponent); }
  static NormedSpace sequences(double exponent) { return NormedSpace(std::nullopt, exponent); }

  std::optional<std::size_t> dimension() const { return dimension_; }
  double exponent() const { return exponent_; }
  bool is_scalar() const { return dimension_ == std::size_t{1}; }

  double norm(std::span<const double> v) const;
  double distance(std::span<const double> u, std::span<const double> v) const {
    return norm(subtract(u, v));
  }
  /// Exact dual norm of the linear functional v -> <phi, v>.
  double dual_norm(std::span<const double> phi) const;

  friend bool operator==(const NormedSpace&, const NormedSpace&) = default;

 private:
  NormedSpace(std::optional<std::size_t> dimension, double exponent);

  std::optional<std::size_t> dimension_;
  double exponent_;
};

inline constexpr double kBasepointTolerance = 1e-12;
inline constexpr double kDeclaredBoundRelTolerance = 1e-9;
/// Pairs closer than this fraction of the diameter estimate are skipped by
/// quotient scans.
inline constexpr double kMinRelativeSeparation = 1e-10;

/// A Lipschitz map from a metric space into a normed space (scalar maps use
/// the one-dimensional space with |.|). Evaluation is pure.
class LipschitzMap {
 public:
  using ValueFn = std::function<Vector(const Point&)>;
  using ScalarFn = std::function<double(const Point&)>;
  using DifferenceFn = std::function<Vector(const Point&, const Point&)>;

  LipschitzMap(NormedSpace codomain, ValueFn value, std::optional<double> declared_lip = std::nullopt,
               bool vanishes_at_basepoint = false);

  static LipschitzMap scalar(ScalarFn f, std::optional<double> declared_lip = std::nullopt,
                             bool vanishes_at_basepoint = false);

  const NormedSpace& codomain() const { return codomain_; }
  bool is_scalar() const { return codomain_.is_scalar(); }
  const std::optional<double>& declared_lip() const { return declared_lip_; }
  bool vanishes_at_basepoint() const { return vanishes_at_basepoint_; }

  Vector operator()(const Point& x) const { return value_(x); }
  /// Throws NonScalarFunctional for vector-valued maps.
  double scalar_value(const Point& x) const;
  /// f(x) - f(y); uses a structure-aware formula when one was attached.
  Vector difference(const Point& x, const Point& y) const;

  LipschitzMap with_difference(DifferenceFn diff) const;
  LipschitzMap with_declared_lip(std::optional<double> lip) const;
  LipschitzMap pointed(bool vanishes = true) const;

 private:
  NormedSpace codomain_;
  ValueFn value_;
  DifferenceFn difference_;
  std::optional<double> declared_lip_;
  bool vanishes_at_basepoint_;
};

/// Max observed difference quotient over a sample: a certified lower bound on
/// Lip(f), with the pair attaining it.
struct LipschitzEstimate {
  double lower_bound = 0.0;
  std::optional<PointPair> witness;
  SamplingStrategy strategy = SamplingStrategy::user_supplied;
  std::uint64_t seed = 0;
  std::size_t pairs_used = 0;
  std::size_t pairs_skipped = 0;
};

double difference_quotient(const LipschitzMap& f, const MetricSpace& space, const Point& x, const Point& y);

/// Throws DeclaredBoundViolated when an observed quotient exceeds the declared
/// constant by more than the relative tolerance.
LipschitzEstimate estimate_lip_number(const LipschitzMap& f, const MetricSpace& space, const PairSample& pairs);

/// Same scan with the basepoint forced into the sampled point set.
LipschitzEstimate lip0_norm_estimate(const LipschitzMap& f, const PointedMetricSpace& space,
                                     const PairSample& pairs);

/// x -> f(x) * tau, with Lip(tau (x) f) = ||tau|| Lip(f).
LipschitzMap rank_one(const Vector& tau, const NormedSpace& space, const LipschitzMap& f);

/// x -> alpha * f(x).
LipschitzMap scale(double alpha, const LipschitzMap& f);

// A few scalar maps on real-valued points, used by the configuration files
// and the tests. Each declares its exact Lipschitz constant.
LipschitzMap identity_map();
LipschitzMap linear_map(double slope);
LipschitzMap constant_map(double value);
/// x -> amplitude * sin(frequency * x)
LipschitzMap sine_map(double amplitude, double frequency);
/// x -> amplitude * (|x - center| - |center|), vanishing at 0.
LipschitzMap kink_map(double amplitude, double center);
LipschitzMap square_map();

}  // namespace lipframe
