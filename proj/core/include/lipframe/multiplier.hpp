#pragma once

#include <optional>
#include <vector>

#include "lipframe/frames.hpp"
#include "lipframe/lipschitz.hpp"
#include "lipframe/metric.hpp"
#include "lipframe/symbol.hpp"

namespace lipframe {

inline constexpr double kConjugateTolerance = 1e-12;

/// x -> sum_n lambda_n f_n(x) tau_n for pointed p-Bessel functionals f (bound
/// b) and q-Bessel vectors tau (bound d), with 1/p + 1/q = 1. Immutable.
class MultiplierOperator {
 public:
  const SymbolSequence& symbol() const { return symbol_; }
  const FunctionalSequence& functionals() const { return functionals_; }
  const VectorSequence& vectors() const { return vectors_; }
  const PointedMetricSpace& space() const { return space_; }
  const NormedSpace& codomain() const { return vectors_.space(); }
  double p() const { return p_; }
  double q() const { return q_; }
  double b() const { return b_; }
  double d() const { return d_; }

  /// Number of terms that can be nonzero, when finite.
  std::optional<std::size_t> effective_length() const;

  MultiplierOperator with_symbol(SymbolSequence symbol) const;
  MultiplierOperator with_vectors(VectorSequence vectors) const;

 private:
  friend MultiplierOperator assemble(SymbolSequence, FunctionalSequence, VectorSequence, PointedMetricSpace,
                                     double, double, double);
  MultiplierOperator(SymbolSequence symbol, FunctionalSequence functionals, VectorSequence vectors,
                     PointedMetricSpace space, double p, double q, double b, double d);
  void validate_coverage() const;

  SymbolSequence symbol_;
  FunctionalSequence functionals_;
  VectorSequence vectors_;
  PointedMetricSpace space_;
  double p_;
  double q_;
  double b_;
  double d_;
};

/// Validates pointedness (NotPointed), 1 < p < infinity (InvalidExponent) and
/// b, d > 0 (NonpositiveBound); q is the conjugate of p.
MultiplierOperator assemble(SymbolSequence symbol, FunctionalSequence functionals, VectorSequence vectors,
                            PointedMetricSpace space, double p, double b, double d);

struct TruncationCertificate {
  enum class Formula { holder_tail, symbol_tail, user_fixed };
  std::size_t truncation_index = 0;
  double remainder_bound = 0.0;
  Formula formula = Formula::holder_tail;
};

const char* to_string(TruncationCertificate::Formula f);

struct Evaluation {
  Vector value;
  TruncationCertificate certificate;
};

/// Partial sum over n < N with d * ||lambda||_inf * (sum_{n>=N} |f_n(x)|^p)^(1/p)
/// <= tolerance. Finitely supported data is summed exactly (certificate 0).
Evaluation apply(const MultiplierOperator& op, const Point& x, double tolerance);

/// Partial sum over a caller-chosen number of terms; the certificate is the
/// Hölder tail bound at that index.
Evaluation apply_truncated(const MultiplierOperator& op, const Point& x, std::size_t terms);

/// M(x) - M(y) = sum_n lambda_n (f_n(x) - f_n(y)) tau_n, certified to `tolerance`.
Evaluation apply_difference(const MultiplierOperator& op, const Point& x, const Point& y, double tolerance);

/// b * d * ||lambda||_inf.
double lip_norm_upper_bound(const MultiplierOperator& op);

struct OperatorNormEstimate {
  LipschitzEstimate estimate;     ///< max of ||M(x) - M(y)|| / d(x, y) over the sample
  double quotient_error = 0.0;    ///< bound on the truncation error of any quotient
  double upper_bound = 0.0;       ///< the analytic bound it was checked against
};

/// Each difference is certified to tolerance * d(x, y) / 10, so every quotient
/// is within tolerance / 10 of the exact one. Throws BoundViolated when a
/// quotient exceeds b d ||lambda||_inf + tolerance even after subtracting its
/// error.
OperatorNormEstimate empirical_lip_norm(const MultiplierOperator& op, const PairSample& pairs, double tolerance);

/// Re-points unpointed functionals at z via g_n = f_n - f_n(z) and assembles.
MultiplierOperator shifted_multiplier(SymbolSequence symbol, const FunctionalSequence& unpointed,
                                      VectorSequence vectors, const MetricSpace& space, const Point& z, double p,
                                      double b, double d);

/// Keeps the first m terms: sum_{n < m} lambda_n (tau_n (x) f_n).
MultiplierOperator finite_rank_truncation(const MultiplierOperator& op, std::size_t m);
/// The complementary tail M - M_m.
MultiplierOperator tail_operator(const MultiplierOperator& op, std::size_t m);

/// b * d * sup_{n >= m} |lambda_n|: the Lipschitz-norm distance between M and
/// its m-term truncation.
double compactness_tail_gap(const MultiplierOperator& op, std::size_t m);

struct DifferenceQuotientSample {
  std::vector<Vector> vectors;
  std::vector<PointPair> pairs;
  double max_error = 0.0;
};

DifferenceQuotientSample difference_quotient_sample(const MultiplierOperator& op, const PairSample& pairs,
                                                    double tolerance);

/// Size of a greedy epsilon-net built in sample order: an upper bound on the
/// epsilon-covering number of the sampled vectors.
std::size_t covering_number_estimate(const DifferenceQuotientSample& sample, const NormedSpace& space,
                                     double epsilon);

struct PerturbationReport {
  double bound = 0.0;       ///< analytic upper bound on ||M - M'||_Lip0
  double empirical = 0.0;   ///< sampled lower estimate of ||M - M'||_Lip0
  double quotient_error = 0.0;
  std::optional<PointPair> witness;
  bool violation = false;
};

/// Compares M_lambda with M_lambda' against b d ||lambda - lambda'||_p.
PerturbationReport symbol_perturbation_check(const MultiplierOperator& op, const SymbolSequence& symbol2,
                                             const PairSample& pairs, double tolerance);

/// Compares M_{lambda,f,tau} with M_{lambda,f,tau'} against
/// b ||lambda||_p (sum ||tau'_n - tau_n||^q)^(1/q).
PerturbationReport vector_perturbation_check(const MultiplierOperator& op, const VectorSequence& vectors2,
                                             const PairSample& pairs, double tolerance);

struct SeparationWitness {
  Point point;
  std::size_t index = 0;     ///< a term where the symbols differ
  double separation = 0.0;   ///< ||M_lambda(x) - M_mu(x)|| (certified lower value)
  double threshold = 0.0;    ///< a |lambda_n - mu_n| |f_n(x)|
};

/// Searches the candidates for a point separating M_lambda from M_mu. Among the
/// witnesses for the first differing index that has any, returns the one with
/// the largest separation. Empty means inconclusive.
std::optional<SeparationWitness> injectivity_separation(const MultiplierOperator& op, const SymbolSequence& mu,
                                                        const std::vector<Point>& candidates,
                                                        double tolerance);

}  // namespace lipframe
