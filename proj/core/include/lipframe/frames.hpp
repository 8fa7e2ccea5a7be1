#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lipframe/lipschitz.hpp"
#include "lipframe/metric.hpp"

namespace lipframe {

inline constexpr std::size_t kDefaultIndexCap = 1024;

/// Frame constants known analytically for a given exponent. An empty `a`
/// means only the upper (Bessel) bound is known.
struct KnownBounds {
  std::optional<double> a;
  double b = 0.0;
};

/// An indexed family of Lipschitz maps f_0, f_1, ... on a metric space.
/// Finite families may be vector-valued; infinite families are scalar-valued
/// and must carry an analytic tail bound for certified truncation.
class FunctionalSequence {
 public:
  using TermFn = std::function<LipschitzMap(std::size_t)>;
  using ValuesFn = std::function<std::vector<Vector>(const Point&, std::size_t count)>;
  using DifferencesFn = std::function<std::vector<Vector>(const Point&, const Point&, std::size_t count)>;
  /// Upper bound on (sum_{n >= N} ||f_n(x) - f_n(y)||^p)^(1/p); nonincreasing in N.
  using TailBoundFn = std::function<double(std::size_t N, const Point& x, const Point& y, double p)>;
  using KnownBoundsFn = std::function<std::optional<KnownBounds>(double p)>;

  static FunctionalSequence finite(std::vector<LipschitzMap> terms, bool pointed = false);

  struct InfiniteParts {
    TermFn term;
    ValuesFn values;
    DifferencesFn differences;
    TailBoundFn tail_bound;  // may be empty; power sums then fail with NoTailBound
    bool pointed = false;
    std::size_t index_cap = kDefaultIndexCap;
  };
  static FunctionalSequence infinite(InfiniteParts parts);

  std::optional<std::size_t> length() const { return length_; }
  bool is_finite() const { return length_.has_value(); }
  bool pointed() const { return pointed_; }
  std::size_t index_cap() const { return index_cap_; }

  LipschitzMap term(std::size_t n) const;
  NormedSpace term_codomain(std::size_t n) const;

  /// f_0(x), ..., f_{count-1}(x); finite families clamp count to their length.
  std::vector<Vector> values(const Point& x, std::size_t count) const;
  std::vector<Vector> differences(const Point& x, const Point& y, std::size_t count) const;

  bool has_tail_bound() const { return static_cast<bool>(tail_bound_); }
  double tail_bound(std::size_t N, const Point& x, const Point& y, double p) const;

  std::optional<KnownBounds> known_bounds(double p) const;
  FunctionalSequence with_known_bounds(KnownBoundsFn fn) const;
  FunctionalSequence with_index_cap(std::size_t cap) const;

  const std::string& name() const { return name_; }
  FunctionalSequence named(std::string name) const;

  /// g_n = f_n - f_n(z): pointed at z, with identical differences (and hence
  /// identical frame bounds and tail bounds).
  FunctionalSequence shifted(const Point& z) const;
  /// alpha * f_n for every n.
  FunctionalSequence scaled(double alpha) const;

 private:
  FunctionalSequence() = default;

  std::optional<std::size_t> length_;
  bool pointed_ = false;
  std::size_t index_cap_ = kDefaultIndexCap;
  std::vector<NormedSpace> codomains_;
  TermFn term_;
  ValuesFn values_;
  DifferencesFn differences_;
  TailBoundFn tail_bound_;
  KnownBoundsFn known_bounds_;
  std::string name_ = "custom";
};

struct PowerSum {
  double value = 0.0;             ///< (sum_{n < N} ||f_n(x) - f_n(y)||^p)^(1/p)
  std::size_t truncation_index = 0;  ///< N, the number of terms summed
  double certificate = 0.0;       ///< bound on the discarded tail; 0 for finite families
};

/// Certified power sum. The true value lies in [value, value + certificate].
PowerSum power_sum(const FunctionalSequence& seq, const Point& x, const Point& y, double p, double tolerance);

struct FrameBoundEstimate {
  double p = 1.0;
  double a_est = 0.0;  ///< min ratio over the sample: an upper bound on the optimal lower frame bound
  double b_est = 0.0;  ///< max ratio over the sample: a lower bound on the optimal upper frame bound
  std::optional<PointPair> a_witness;
  std::optional<PointPair> b_witness;
  std::size_t truncation_index = 0;  ///< largest N used
  double truncation_tolerance = 0.0;
  double max_certificate = 0.0;
  SamplingStrategy strategy = SamplingStrategy::user_supplied;
  std::uint64_t seed = 0;
  std::size_t pairs_used = 0;
  std::size_t pairs_skipped = 0;
};

/// Each power sum is certified to tolerance * d(x, y), so the tolerance bounds
/// the error of every ratio.
FrameBoundEstimate estimate_frame_bounds(const FunctionalSequence& seq, const MetricSpace& space, double p,
                                         const PairSample& pairs, double tolerance);

struct BesselViolation {
  PointPair pair;
  double ratio = 0.0;
};

struct BesselReport {
  double claimed_b = 0.0;
  std::size_t pairs_checked = 0;
  std::vector<BesselViolation> violations;
  bool consistent() const { return violations.empty(); }
};

/// Truncated sums are lower bounds on the full sums, so every reported
/// violation is a genuine one.
BesselReport verify_bessel(const FunctionalSequence& seq, const MetricSpace& space, double p, double claimed_b,
                           const PairSample& pairs, double tolerance);

// ---------------------------------------------------------------------------
// Vector sequences

struct RieszBounds {
  double a = 0.0;
  double b = 0.0;
};

/// tau_0, tau_1, ... in a normed space: an explicit finite list or the
/// standard basis, plus an optional finitely supported additive perturbation.
class VectorSequence {
 public:
  static VectorSequence from_list(NormedSpace space, std::vector<Vector> terms);
  /// e_0, e_1, ...; `count` defaults to the space dimension (unbounded for
  /// sequence spaces).
  static VectorSequence standard_basis(NormedSpace space, std::optional<std::size_t> count = std::nullopt);

  const NormedSpace& space() const { return space_; }
  std::optional<std::size_t> length() const;
  Vector term(std::size_t n) const;

  const std::optional<double>& declared_q_bessel_bound() const { return declared_d_; }
  const std::optional<RieszBounds>& declared_riesz_bounds() const { return declared_riesz_; }
  VectorSequence with_declared_q_bessel_bound(std::optional<double> d) const;
  VectorSequence with_declared_riesz_bounds(std::optional<RieszBounds> bounds) const;

  /// tau'_n = tau_n + delta_n on the given indices.
  VectorSequence perturbed(const std::map<std::size_t, Vector>& delta) const;

  /// this - other as a finitely supported map, when computable: both share
  /// the same base list/basis, or both are finite.
  std::optional<std::map<std::size_t, Vector>> finite_difference(const VectorSequence& other) const;

  std::string describe() const;

 private:
  enum class BaseKind { list, standard_basis };

  VectorSequence(NormedSpace space) : space_(std::move(space)) {}
  bool same_base(const VectorSequence& other) const;

  NormedSpace space_;
  BaseKind base_kind_ = BaseKind::list;
  std::shared_ptr<const std::vector<Vector>> list_;
  std::optional<std::size_t> basis_count_;
  std::map<std::size_t, Vector> overlay_;
  std::optional<double> declared_d_;
  std::optional<RieszBounds> declared_riesz_;
};

struct RieszCheck {
  double a_est = 0.0;
  double b_est = 0.0;
  std::size_t a_witness = 0;  ///< index into the coefficient samples
  std::size_t b_witness = 0;
  std::vector<std::size_t> violations;  ///< samples outside the declared bounds
};

RieszCheck riesz_sequence_check(const VectorSequence& tau, double q, const std::vector<Vector>& coefficient_samples);

/// h = f - g for a pair of pointed Lipschitz functionals on the normed space,
/// with its exact Lip_0 norm.
struct DualFunctional {
  enum class Kind { linear, distance };
  Kind kind = Kind::linear;
  Vector data;  ///< phi for linear, w for distance
  double lip0_norm = 1.0;
  double operator()(const Vector& v, const NormedSpace& space) const;

  static DualFunctional linear(Vector phi, const NormedSpace& space);
  /// v -> ||v - w|| - ||w||; Lip_0 norm 1 for w != 0.
  static DualFunctional distance(Vector w);
};

/// Unit-norm functionals on the first `dimension` coordinates: linear ones
/// with dual norm 1, then distance functionals, alternating.
std::vector<DualFunctional> sample_dual_functionals(const NormedSpace& space, std::size_t dimension,
                                                    std::size_t count, std::uint64_t seed,
                                                    bool include_nonlinear = true);

struct DualBesselEstimate {
  double d_est = 0.0;  ///< a lower bound on the true dual-side Bessel constant
  std::optional<std::size_t> witness;
  std::size_t terms_used = 0;
};

/// Infinite sequences are summed over their first `max_terms` vectors.
DualBesselEstimate estimate_dual_bessel_bound(const VectorSequence& tau, double q,
                                              const std::vector<DualFunctional>& functional_samples,
                                              std::size_t max_terms = kDefaultIndexCap);

// ---------------------------------------------------------------------------
// Example frames with exactly known bounds

/// The space {x, y} as a subset of R.
MetricSpace two_point_space(double x, double y);
/// f_1 = identity, f_2 = swap on {x, y}: sum |f_i(x) - f_i(y)|^p = 2|x - y|^p.
FunctionalSequence two_point_frame(double x, double y);

/// f_j : R^n -> R^m selecting m coordinates cyclically from x_j; all norms are
/// l^p, giving a = b = m^(1/p).
FunctionalSequence cyclic_shift_frame(std::size_t n, std::size_t m, double p);

/// f_0 = 1, f_n(x) = (log x)^n / n! on [a, b] with 1 < a < b: a 1-frame with
/// a = b = 1, and a p-Bessel sequence with b = 1 for every p >= 1.
FunctionalSequence log_series_frame(double a, double b, std::size_t index_cap = kDefaultIndexCap);

}  // namespace lipframe
