#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "lipframe/errors.hpp"
#include "lipframe/frames.hpp"

using namespace lipframe;

namespace {

// Oracle for the cyclic frame: sum_j sum_k |x[(j+k) mod n] - y[...]|^p over
// all n terms, computed directly.
double cyclic_oracle(const Vector& x, const Vector& y, std::size_t m, double p) {
  const std::size_t n = x.size();
  long double s = 0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < m; ++k) s += std::pow(std::abs(x[(j + k) % n] - y[(j + k) % n]), p);
  return std::pow(static_cast<double>(s), 1.0 / p);
}

FunctionalSequence zeros(std::size_t n) {
  std::vector<LipschitzMap> terms(n, constant_map(0.0));
  return FunctionalSequence::finite(terms, true);
}

}  // namespace

TEST(PowerSum, LogSeriesSumsToDistance) {
  const auto f = log_series_frame(2, 3);
  const auto s = power_sum(f, 2.0, 3.0, 1.0, 1e-8);
  EXPECT_NEAR(s.value, 1.0, 1e-8);
  EXPECT_LE(s.certificate, 1e-8);
  EXPECT_LE(s.value, 1.0 + 1e-12);
  EXPECT_LE(1.0, s.value + s.certificate + 1e-12);
  EXPECT_EQ(power_sum(f, 2.5, 2.5, 1.0, 1e-8).value, 0.0);
}

TEST(PowerSum, LogSeriesOnTwoToE) {
  const auto f = log_series_frame(2, std::numbers::e);
  EXPECT_NEAR(power_sum(f, 2.0, std::numbers::e, 1.0, 1e-10).value, std::numbers::e - 2.0, 1e-9);
}

TEST(PowerSum, CyclicUnitVector) {
  const auto f = cyclic_shift_frame(3, 5, 2);
  EXPECT_NEAR(power_sum(f, Vector{1, 0, 0}, Vector{0, 0, 0}, 2.0, 0).value, std::sqrt(5.0), 1e-15);
}

TEST(PowerSum, ConstantTermsGiveZero) {
  EXPECT_EQ(power_sum(zeros(4), 0.1, 0.9, 2.0, 0).value, 0.0);
}

TEST(PowerSum, SymmetricInArguments) {
  const auto f = log_series_frame(2, 3);
  Rng rng(1);
  for (int i = 0; i < 50; ++i) {
    const double x = rng.uniform(2, 3), y = rng.uniform(2, 3);
    for (double p : {1.0, 2.0, 3.5}) {
      const auto a = power_sum(f, x, y, p, 1e-10), b = power_sum(f, y, x, p, 1e-10);
      EXPECT_EQ(a.value, b.value);
      EXPECT_EQ(a.truncation_index, b.truncation_index);
    }
  }
}

TEST(PowerSum, CertificateMonotone) {
  const auto f = log_series_frame(2, 3);
  double prev_value = 0, prev_cert = kInfinity;
  for (double tol : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
    const auto s = power_sum(f, 2.2, 2.9, 1.0, tol);
    EXPECT_GE(s.value, prev_value);
    EXPECT_LE(s.certificate, prev_cert);
    prev_value = s.value;
    prev_cert = s.certificate;
  }
}

TEST(PowerSum, ErrorsForInfiniteSequences) {
  const auto cut = log_series_frame(2, 3, 3);
  EXPECT_THROW(power_sum(cut, 2.0, 3.0, 1.0, 1e-12), ToleranceUnreachable);
  FunctionalSequence::InfiniteParts parts;
  parts.values = [](const Point&, std::size_t c) { return std::vector<Vector>(c, Vector{0.0}); };
  parts.differences = [](const Point&, const Point&, std::size_t c) { return std::vector<Vector>(c, Vector{0.0}); };
  parts.term = [](std::size_t) { return constant_map(0.0); };
  const auto no_tail = FunctionalSequence::infinite(parts);
  EXPECT_THROW(power_sum(no_tail, 0.0, 1.0, 1.0, 1e-3), NoTailBound);
}

TEST(FrameBounds, CyclicExact) {
  const auto R3 = make_euclidean_space(3, 2);
  const auto f = cyclic_shift_frame(3, 5, 2);
  const auto e = estimate_frame_bounds(f, R3, 2, sample_pairs(R3, SamplingStrategy::uniform_random, 1000, 1), 0);
  EXPECT_NEAR(e.a_est, std::sqrt(5.0), 1e-9);
  EXPECT_NEAR(e.b_est, std::sqrt(5.0), 1e-9);
  EXPECT_LE(e.a_est, e.b_est);
}

TEST(FrameBounds, CyclicRatioOnEveryPair) {
  Rng rng(8);
  for (auto [n, m, p] : {std::tuple{1u, 1u, 2.0}, std::tuple{2u, 4u, 1.0}, std::tuple{3u, 7u, 3.0}}) {
    const auto f = cyclic_shift_frame(n, m, p);
    const auto space = make_euclidean_space(n, p);
    for (int i = 0; i < 100; ++i) {
      Vector x(n), y(n);
      for (auto& c : x) c = rng.uniform(-5, 5);
      for (auto& c : y) c = rng.uniform(-5, 5);
      const double ratio = power_sum(f, x, y, p, 0).value / space.distance(x, y);
      EXPECT_NEAR(ratio, std::pow(static_cast<double>(m), 1.0 / p), 1e-12 * ratio);
      EXPECT_NEAR(power_sum(f, x, y, p, 0).value, cyclic_oracle(x, y, m, p), 1e-12 * ratio);
    }
    ASSERT_TRUE(f.known_bounds(p));
    EXPECT_NEAR(*f.known_bounds(p)->a, std::pow(static_cast<double>(m), 1.0 / p), 1e-15);
  }
  EXPECT_THROW(cyclic_shift_frame(3, 2, 2), InvalidDimensions);
}

TEST(FrameBounds, CyclicIdentityFiveFold) {
  const auto f = cyclic_shift_frame(3, 5, 2);
  const Vector x{1, 2, 3}, y{0, 0, 0};
  EXPECT_NEAR(std::pow(power_sum(f, x, y, 2, 0).value, 2), 5 * 14.0, 1e-12);
}

TEST(FrameBounds, LogSeriesOneFrame) {
  const auto I = make_interval_space(2, 3);
  const auto e = estimate_frame_bounds(log_series_frame(2, 3), I, 1.0,
                                       sample_pairs(I, SamplingStrategy::uniform_random, 1000, 3), 1e-8);
  EXPECT_GE(e.a_est, 1 - 1e-6);
  EXPECT_LE(e.b_est, 1 + 1e-6);
  EXPECT_GT(e.truncation_index, 0u);
}

TEST(FrameBounds, ZeroSequence) {
  const auto I = make_interval_space(0, 1);
  const auto e = estimate_frame_bounds(zeros(3), I, 2, sample_pairs(I, SamplingStrategy::uniform_random, 50, 1), 0);
  EXPECT_EQ(e.a_est, 0.0);
  EXPECT_EQ(e.b_est, 0.0);
}

TEST(FrameBounds, SupersetMonotone) {
  const auto I = make_interval_space(-1, 1);
  const auto f = FunctionalSequence::finite({sine_map(1, 2), kink_map(1, 0.5), identity_map()}, true);
  const auto small = estimate_frame_bounds(f, I, 2, sample_pairs(I, SamplingStrategy::uniform_random, 100, 2), 0);
  const auto big = estimate_frame_bounds(f, I, 2, sample_pairs(I, SamplingStrategy::uniform_random, 1000, 2), 0);
  EXPECT_LE(big.a_est, small.a_est);
  EXPECT_GE(big.b_est, small.b_est);
}

TEST(FrameBounds, Homogeneity) {
  const auto I = make_interval_space(2, 3);
  const auto pairs = sample_pairs(I, SamplingStrategy::uniform_random, 200, 4);
  const auto f = log_series_frame(2, 3);
  const auto e = estimate_frame_bounds(f, I, 2, pairs, 1e-12);
  const auto g = estimate_frame_bounds(f.scaled(-2.5), I, 2, pairs, 1e-12);
  EXPECT_NEAR(g.a_est, 2.5 * e.a_est, 1e-10);
  EXPECT_NEAR(g.b_est, 2.5 * e.b_est, 1e-10);
}

TEST(Bessel, CyclicClaims) {
  const auto R3 = make_euclidean_space(3, 2);
  const auto f = cyclic_shift_frame(3, 5, 2);
  const auto pairs = sample_pairs(R3, SamplingStrategy::uniform_random, 200, 5);
  EXPECT_TRUE(verify_bessel(f, R3, 2, std::sqrt(5.0), pairs, 0).consistent());
  const auto bad = verify_bessel(f, R3, 2, 2.0, pairs, 0);
  EXPECT_EQ(bad.violations.size(), pairs.size());
  for (const auto& v : bad.violations) EXPECT_NEAR(v.ratio, std::sqrt(5.0), 1e-12);
  EXPECT_THROW(verify_bessel(f, R3, 2, 0.0, pairs, 0), NonpositiveBound);
}

TEST(Bessel, ZeroSequenceConsistent) {
  const auto I = make_interval_space(0, 1);
  EXPECT_TRUE(verify_bessel(zeros(2), I, 1, 1, sample_pairs(I, SamplingStrategy::uniform_random, 30, 1), 0)
                  .consistent());
}

TEST(TwoPoint, Identities) {
  const auto f = two_point_frame(0, 1);
  EXPECT_NEAR(power_sum(f, 0.0, 1.0, 2, 0).value, std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(power_sum(f, 0.0, 1.0, 1, 0).value, 2.0, 1e-15);
  EXPECT_THROW(two_point_frame(2, 2), DegeneratePoints);
  const auto g = two_point_frame(-1.5, 4);
  EXPECT_NEAR(power_sum(g, -1.5, 4.0, 3, 0).value, std::cbrt(2.0) * 5.5, 1e-12);
}

TEST(Shifted, PointedAtZAndSameDifferences) {
  const auto f = log_series_frame(2, 3);
  const auto g = f.shifted(2.0);
  EXPECT_TRUE(g.pointed());
  for (const auto& v : g.values(2.0, 20)) EXPECT_EQ(v[0], 0.0);
  Rng rng(2);
  for (int i = 0; i < 30; ++i) {
    const double x = rng.uniform(2, 3), y = rng.uniform(2, 3);
    EXPECT_EQ(power_sum(f, x, y, 1, 1e-10).value, power_sum(g, x, y, 1, 1e-10).value);
  }
  const auto lin = FunctionalSequence::finite({identity_map()}).shifted(2.0);
  EXPECT_DOUBLE_EQ(lin.values(2.7, 1)[0][0], 0.7);
}

TEST(Riesz, StandardBasis) {
  Rng rng(4);
  for (double q : {1.0, 2.0, 3.0}) {
    const auto tau = VectorSequence::standard_basis(NormedSpace::finite(4, q));
    std::vector<Vector> samples;
    for (int i = 0; i < 100; ++i) {
      Vector c(4);
      for (auto& x : c) x = rng.uniform(-1, 1);
      samples.push_back(c);
    }
    const auto r = riesz_sequence_check(tau, q, samples);
    EXPECT_NEAR(r.a_est, 1.0, 1e-12);
    EXPECT_NEAR(r.b_est, 1.0, 1e-12);
  }
}

TEST(Riesz, AnisotropicAndDegenerate) {
  const auto R2 = NormedSpace::finite(2, 2);
  const auto tau = VectorSequence::from_list(R2, {{1, 0}, {0, 2}});
  const auto r = riesz_sequence_check(tau, 2, {{1, 0}, {0, 1}, {1, 1}});
  EXPECT_NEAR(r.a_est, 1.0, 1e-15);
  EXPECT_NEAR(r.b_est, 2.0, 1e-15);
  const auto with_zero = VectorSequence::from_list(R2, {{1, 0}, {0, 0}});
  EXPECT_EQ(riesz_sequence_check(with_zero, 2, {{0, 1}}).a_est, 0.0);
  EXPECT_THROW(riesz_sequence_check(tau, 2, {{0, 0}}), EmptyCoefficients);
  EXPECT_THROW(riesz_sequence_check(tau, 2, {}), EmptyCoefficients);
  const auto declared = tau.with_declared_riesz_bounds(RieszBounds{1.0, 1.5});
  EXPECT_FALSE(riesz_sequence_check(declared, 2, {{0, 1}}).violations.empty());
}

TEST(DualBessel, StandardBasisBelowOne) {
  for (double q : {2.0, 3.0, 4.0}) {
    const auto X = NormedSpace::finite(5, q);
    const auto tau = VectorSequence::standard_basis(X);
    const auto samples = sample_dual_functionals(X, 5, 200, 1, false);
    // Oracle: for unit dual norm phi, (sum |phi_n|^q)^(1/q) <= ||phi||_{q'}.
    for (const auto& h : samples) EXPECT_NEAR(X.dual_norm(h.data), 1.0, 1e-12);
    EXPECT_LE(estimate_dual_bessel_bound(tau, q, samples).d_est, 1.0 + 1e-12);
  }
}

TEST(DualBessel, SingleVectorAttainsOne) {
  const auto X = NormedSpace::finite(2, 2);
  const auto tau = VectorSequence::from_list(X, {{0.6, 0.8}});
  auto samples = sample_dual_functionals(X, 2, 100, 3, true);
  EXPECT_LE(estimate_dual_bessel_bound(tau, 2, samples).d_est, 1.0 + 1e-12);
  samples.push_back(DualFunctional::linear({0.6, 0.8}, X));
  EXPECT_NEAR(estimate_dual_bessel_bound(tau, 2, samples).d_est, 1.0, 1e-12);
}

TEST(DualBessel, EmptyAndDeclared) {
  const auto X = NormedSpace::finite(2, 2);
  EXPECT_EQ(estimate_dual_bessel_bound(VectorSequence::from_list(X, {}), 2, sample_dual_functionals(X, 2, 4, 1)).d_est,
            0.0);
  const auto tau = VectorSequence::from_list(X, {{3, 0}}).with_declared_q_bessel_bound(1.0);
  EXPECT_THROW(estimate_dual_bessel_bound(tau, 2, {DualFunctional::linear({1, 0}, X)}), DeclaredBoundViolated);
}

TEST(VectorSequence, PerturbationDifference) {
  const auto X = NormedSpace::sequences(2);
  const auto tau = VectorSequence::standard_basis(X);
  EXPECT_EQ(tau.term(2), (Vector{0, 0, 1}));
  EXPECT_FALSE(tau.length());
  const auto moved = tau.perturbed({{1, {0.0, 0.2}}});
  const auto diff = moved.finite_difference(tau);
  ASSERT_TRUE(diff);
  ASSERT_EQ(diff->size(), 1u);
  EXPECT_EQ(diff->at(1), (Vector{0.0, 0.2}));
  EXPECT_TRUE(tau.finite_difference(tau)->empty());
}
