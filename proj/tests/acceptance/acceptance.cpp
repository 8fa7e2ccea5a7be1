// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "lipframe/lipframe.hpp"

using namespace lipframe;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Gate {
 public:
  void check(int id, const std::string& title, const std::function<Outcome()>& fn) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %2d  %s: %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.c_str());
    failures_ += !o.pass;
  }
  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

std::string fmt(const char* f, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const NormedSpace kL2 = NormedSpace::sequences(2);

MultiplierOperator log_series_operator(SymbolSequence symbol) {
  return shifted_multiplier(std::move(symbol), log_series_frame(2, 3), VectorSequence::standard_basis(kL2),
                            make_interval_space(2, 3), 2.0, 2, 1, 1);
}

// (sum |v_i|^p)^(1/p), written out here rather than taken from the library.
double oracle_p_norm(const Vector& v, double p) {
  long double s = 0;
  for (double x : v) s += std::pow(std::abs(static_cast<long double>(x)), p);
  return static_cast<double>(std::pow(s, 1.0L / p));
}

// 1. Cyclic-shift frame exactness.
Outcome cyclic_exactness() {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  std::ostringstream detail;
  for (auto [n, m, p] : {std::tuple{2u, 3u, 2.0}, std::tuple{3u, 5u, 2.0}, std::tuple{3u, 5u, 3.0}}) {
    const auto space = make_euclidean_space(n, p);
    const auto pairs = sample_pairs(space, SamplingStrategy::uniform_random, 10000, 1000 + n + m);
    const auto est = estimate_frame_bounds(cyclic_shift_frame(n, m, p), space, p, pairs, 0);
    const double exact = std::pow(static_cast<double>(m), 1.0 / p);
    const double err = std::max(std::abs(est.a_est - exact), std::abs(est.b_est - exact)) / exact;
    out.pass &= err <= 1e-9 && pairs.size() == 10000;
    detail << "(" << n << "," << m << "," << p << ") rel err " << err << "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.pass &= secs < 5.0;
  detail << "runtime " << secs << " s";
  out.detail = detail.str();
  return out;
}

// 2. Log-series 1-frame.
Outcome log_series_frame_bounds() {
  const auto f = log_series_frame(2, 3);
  const auto I = make_interval_space(2, 3);
  const auto s = power_sum(f, 2.0, 3.0, 1.0, 1e-8);
  const auto est =
      estimate_frame_bounds(f, I, 1.0, sample_pairs(I, SamplingStrategy::uniform_random, 1000, 2), 1e-8);
  auto in_band = [](double v) { return v >= 1 - 1e-6 && v <= 1 + 1e-6; };
  return {in_band(s.value) && in_band(est.a_est) && in_band(est.b_est) && s.certificate <= 1e-8,
          fmt("power_sum %.12f, a_est %.12f, b_est %.12f", s.value, est.a_est, est.b_est)};
}

// 3. Multiplier norm bound on random finite configurations.
Outcome multiplier_norm_bound() {
  Rng rng(303);
  const PointedMetricSpace M(make_interval_space(-1, 1), 0.0);
  int violations = 0;
  double worst = -kInfinity;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t K = 3 + rng.index(6);
    const double q = trial % 2 ? 3.0 : 2.0;
    const double p = q / (q - 1);
    std::vector<LipschitzMap> terms;
    Vector lips, lambda;
    for (std::size_t n = 0; n < K; ++n) {
      switch (rng.index(3)) {
        case 0: terms.push_back(sine_map(rng.uniform(0.1, 1), rng.uniform(0.5, 5))); break;
        case 1: terms.push_back(kink_map(rng.uniform(-1, 1), rng.uniform(-1, 1))); break;
        default: terms.push_back(linear_map(rng.uniform(-1, 1))); break;
      }
      lips.push_back(*terms.back().declared_lip());
      lambda.push_back(rng.uniform(-2, 2));
    }
    // Bessel bound from the termwise constants; d = 1 for the standard basis
    // of l^q since q >= p.
    const double b = std::max(oracle_p_norm(lips, p), 1e-12);
    const auto op = assemble(SymbolSequence::literal(lambda), FunctionalSequence::finite(terms, true),
                             VectorSequence::standard_basis(NormedSpace::finite(K, q)), M, p, b, 1);
    double sup = 0;
    for (double l : lambda) sup = std::max(sup, std::abs(l));
    const double bound = b * 1 * sup;
    const auto pairs = sample_pairs(M.base(), SamplingStrategy::local_perturbation, 500, trial);
    try {
      const auto e = empirical_lip_norm(op, pairs, 1e-9);
      if (e.estimate.lower_bound > bound + 1e-9) ++violations;
      worst = std::max(worst, e.estimate.lower_bound - bound);
    } catch (const BoundViolated&) {
      ++violations;
    }
  }
  return {violations == 0, fmt("100 configurations, %.0f violations, max(estimate - bound) = %.3e", violations, worst)};
}

// 4. Certificate soundness.
Outcome certificate_soundness() {
  Outcome out;
  double worst_ratio = 0;
  for (const auto& lambda : {SymbolSequence::geometric(0.5), SymbolSequence::power(2)}) {
    const auto op = log_series_operator(lambda);
    for (const auto& x : sample_points(make_interval_space(2, 3), 100, 44)) {
      const auto coarse = apply(op, x, 1e-6);
      const auto ref = apply(op, x, 1e-12);
      const double diff = kL2.distance(coarse.value, ref.value);
      out.pass &= diff <= coarse.certificate.remainder_bound && coarse.certificate.remainder_bound <= 1e-6;
      if (coarse.certificate.remainder_bound > 0)
        worst_ratio = std::max(worst_ratio, diff / coarse.certificate.remainder_bound);
    }
  }
  out.detail = fmt("200 evaluations, max |apply(1e-6) - apply(1e-12)| / certificate = %.3e", worst_ratio);
  return out;
}

// 5. Compactness gap and net-size stabilisation.
Outcome compactness() {
  const auto op = log_series_operator(SymbolSequence::one_over_n());
  const MetricSpace& I = op.space().base();
  const auto pairs = sample_pairs(I, SamplingStrategy::local_perturbation, 2000, 55);
  Outcome out;
  std::ostringstream detail;
  for (std::size_t m : {1, 5, 10, 50}) {
    // M - M_m measured as the difference of the two operators.
    const auto head = finite_rank_truncation(op, m);
    double worst = 0;
    for (const auto& [x, y] : pairs.pairs) {
      const double d = I.distance(x, y);
      const auto full = apply_difference(op, x, y, 1e-12 * d);
      const auto part = apply_difference(head, x, y, 0);
      worst = std::max(worst, kL2.norm(subtract(full.value, part.value)) / d);
    }
    const double bound = op.b() * op.d() / static_cast<double>(m + 1);
    out.pass &= worst <= bound + 1e-9;
    detail << "m=" << m << " max " << worst << " <= " << bound << "; ";
  }
  const auto small = sample_pairs(I, SamplingStrategy::uniform_random, 1000, 5);
  const auto large = sample_pairs(I, SamplingStrategy::uniform_random, 10000, 5);
  const auto n_small = covering_number_estimate(difference_quotient_sample(op, small, 1e-10), kL2, 0.1);
  const auto n_large = covering_number_estimate(difference_quotient_sample(op, large, 1e-10), kL2, 0.1);
  out.pass &= n_small == n_large;
  detail << "net sizes " << n_small << " / " << n_large;
  out.detail = detail.str();
  return out;
}

// 6. Continuity under symbol perturbations.
Outcome continuity_symbol() {
  const auto op = log_series_operator(SymbolSequence::one_over_n());
  const auto pairs = sample_pairs(op.space().base(), SamplingStrategy::local_perturbation, 400, 66);
  Rng rng(606);
  Outcome out;
  double worst = -kInfinity;
  for (int k = 0; k < 50; ++k) {
    Vector delta(1 + rng.index(10));
    for (double& v : delta) v = rng.uniform(-1, 1);
    const double target = std::pow(10.0, rng.uniform(-4, 0));
    const double raw = oracle_p_norm(delta, op.p());
    for (double& v : delta) v *= target / raw;
    const double norm = oracle_p_norm(delta, op.p());
    const auto r = symbol_perturbation_check(op, op.symbol().perturbed(delta), pairs, 1e-9);
    const double bound = op.b() * op.d() * norm;
    out.pass &= std::abs(r.bound - bound) <= 1e-12 * bound && r.empirical <= bound + 1e-9 && !r.violation &&
                norm >= 1e-4 * (1 - 1e-12) && norm <= 1 + 1e-12;
    worst = std::max(worst, r.empirical - bound);
  }
  out.detail = fmt("50 perturbations, max(empirical - b d ||dlambda||_p) = %.3e", worst);
  return out;
}

// 7. Continuity under vector perturbations.
Outcome continuity_vector() {
  const auto op = log_series_operator(SymbolSequence::one_over_n());
  const auto pairs = sample_pairs(op.space().base(), SamplingStrategy::local_perturbation, 400, 77);
  const double lambda_p = std::numbers::pi / std::sqrt(6.0);  // ||1/n||_2
  Rng rng(707);
  Outcome out;
  double worst = -kInfinity;
  for (int k = 0; k < 50; ++k) {
    std::map<std::size_t, Vector> delta;
    Vector norms;
    const std::size_t count = 1 + rng.index(4);
    const double scale = std::pow(10.0, rng.uniform(-3, 0));
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t n = rng.index(12);
      Vector v(1 + rng.index(12));
      for (double& c : v) c = scale * rng.uniform(-1, 1);
      delta[n] = v;
    }
    for (const auto& [n, v] : delta) norms.push_back(oracle_p_norm(v, 2));
    const double bound = op.b() * lambda_p * oracle_p_norm(norms, op.q());
    const auto r = vector_perturbation_check(op, op.vectors().perturbed(delta), pairs, 1e-9);
    out.pass &= std::abs(r.bound - bound) <= 1e-12 * bound && r.empirical <= bound + 1e-9 && !r.violation;
    worst = std::max(worst, r.empirical - bound);
  }
  out.detail = fmt("50 perturbations, max(empirical - bound) = %.3e", worst);
  return out;
}

// 8. Injectivity witness.
Outcome injectivity() {
  const PointedMetricSpace M(make_interval_space(-1, 1), 0.0);
  const auto tau = VectorSequence::standard_basis(NormedSpace::finite(3, 2)).with_declared_riesz_bounds(RieszBounds{1, 1});
  const auto f = FunctionalSequence::finite({identity_map(), sine_map(0.5, 2), kink_map(1, 0.3)}, true);
  const auto lambda = SymbolSequence::literal({1, 0.5, 0.25});
  const auto mu = SymbolSequence::literal({0.3, 0.5, 0.25});
  const auto op = assemble(lambda, f, tau, M, 2, 1, 1);
  std::vector<Point> candidates;
  for (int i = 0; i <= 8; ++i) candidates.push_back(-1.0 + 0.25 * i);
  const auto w = injectivity_separation(op, mu, candidates, 1e-9);
  const double need = 1.0 * 0.7 * 0.5 - 1e-9;
  if (!w) return {false, "no witness among candidates"};
  return {w->index == 0 && w->separation >= need,
          fmt("witness separation %.6f >= %.6f at index %.0f", w->separation, need, static_cast<double>(w->index))};
}

// 9. Rank-one identity.
Outcome rank_one_identity() {
  Rng rng(909);
  const auto I = make_interval_space(-2, 2);
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const std::size_t K = 1 + rng.index(5);
    const NormedSpace X = NormedSpace::finite(K, rng.uniform(1, 4));
    Vector tau(K);
    for (double& c : tau) c = rng.uniform(-3, 3);
    const LipschitzMap f = k % 2 ? sine_map(rng.uniform(0.2, 2), rng.uniform(0.5, 4)) : kink_map(rng.uniform(-2, 2), rng.uniform(-1, 1));
    const auto pairs = sample_pairs(I, SamplingStrategy::local_perturbation, 500, k);
    const double ef = estimate_lip_number(f, I, pairs).lower_bound;
    const double eg = estimate_lip_number(rank_one(tau, X, f), I, pairs).lower_bound;
    worst = std::max(worst, std::abs(eg - X.norm(tau) * ef) / (X.norm(tau) * ef));
  }
  return {worst <= 1e-12, fmt("20 pairs (tau, f), max relative deviation %.3e", worst)};
}

// 10. CLI plumbing.
Outcome plumbing() {
  auto run = [](std::vector<std::string> args, std::string* out = nullptr) {
    std::ostringstream o, e;
    const int code = cli::run(args, o, e);
    if (out) *out = o.str();
    return code;
  };
  auto strip = [](const std::string& text) {
    auto j = nlohmann::ordered_json::parse(text);
    j.erase("timings");
    return j.dump();
  };
  const fs::path configs = LIPFRAME_CONFIG_DIR;
  const fs::path tmp = fs::temp_directory_path();
  std::ofstream(tmp / "lipframe_accept_zero.conf")
      << "space = interval -1 1\nframe = list zero\nsymbol = list 1\nvectors = list 1 0\nb = 1\nd = 1\n"
         "riesz_a = 1\nsymbol2 = list 2\ncandidates = 0.25; 0.5; 1\n";
  std::ofstream(tmp / "lipframe_accept_capped.conf")
      << "frame = log_series 2 3 3\nbasepoint = 2\nsymbol = constant 1\nb = 1\nd = 1\n";

  std::ostringstream detail;
  bool pass = true;
  auto expect = [&](const std::string& what, int got, int want) {
    pass &= got == want;
    detail << what << "=" << got << (got == want ? "" : "(!)") << " ";
  };
  expect("triangle", run({"validate-metric", "--metric", (configs / "triangle_violation.txt").string()}), 2);
  expect("cyclic", run({"verify-frame", "--config", (configs / "cyclic.conf").string(), "--pairs", "100"}), 0);
  expect("understated",
         run({"verify-frame", "--config", (configs / "cyclic_understated.conf").string(), "--pairs", "100"}), 2);
  expect("missing", run({"verify-frame", "--config", (tmp / "lipframe_no_such.conf").string()}), 1);
  expect("apply", run({"apply", "--config", (configs / "single_term.conf").string(), "--point", "0.5"}), 0);
  expect("unreachable", run({"apply", "--config", (tmp / "lipframe_accept_capped.conf").string(), "--point", "3"}), 3);
  expect("all", run({"check-theorems", "--config", (configs / "log_series.conf").string(), "--pairs", "300"}), 0);
  expect("inconclusive",
         run({"check-theorems", "--config", (tmp / "lipframe_accept_zero.conf").string(), "--suite", "injectivity"}), 3);

  std::string a, b;
  const std::vector<std::string> args = {"check-theorems", "--config", (configs / "log_series.conf").string(),
                                         "--pairs", "300", "--seed", "9"};
  run(args, &a);
  run(args, &b);
  const bool identical = strip(a) == strip(b);
  pass &= identical;
  detail << "reproducible=" << (identical ? "yes" : "no");
  return {pass, detail.str()};
}

}  // namespace

int main() {
  Gate gate;
  gate.check(1, "cyclic-shift frame exactness", cyclic_exactness);
  gate.check(2, "log-series 1-frame", log_series_frame_bounds);
  gate.check(3, "multiplier norm bound", multiplier_norm_bound);
  gate.check(4, "certificate soundness", certificate_soundness);
  gate.check(5, "compactness gap and net sizes", compactness);
  gate.check(6, "continuity in the symbol", continuity_symbol);
  gate.check(7, "continuity in the vectors", continuity_vector);
  gate.check(8, "injectivity witness", injectivity);
  gate.check(9, "rank-one identity", rank_one_identity);
  gate.check(10, "CLI plumbing", plumbing);
  std::printf("%d of 10 criteria failed\n", gate.failures());
  return gate.failures() == 0 ? 0 : 1;
}
