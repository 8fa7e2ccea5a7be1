#include "lipframe/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lipframe {

const char* to_string(TruncationCertificate::Formula f) {
  switch (f) {
    case TruncationCertificate::Formula::holder_tail: return "holder_tail";
    case TruncationCertificate::Formula::symbol_tail: return "symbol_tail";
    case TruncationCertificate::Formula::user_fixed: return "user_fixed";
  }
  return "unknown";
}

// Number of leading terms checked against the basepoint at assembly.
constexpr std::size_t kPointednessProbeTerms = 32;

MultiplierOperator::MultiplierOperator(SymbolSequence symbol, FunctionalSequence functionals,
                                       VectorSequence vectors, PointedMetricSpace space, double p, double q,
                                       double b, double d)
    : symbol_(std::move(symbol)),
      functionals_(std::move(functionals)),
      vectors_(std::move(vectors)),
      space_(std::move(space)),
      p_(p),
      q_(q),
      b_(b),
      d_(d) {}

std::optional<std::size_t> MultiplierOperator::effective_length() const {
  const auto f_len = functionals_.length();
  const auto s_len = symbol_.support_end();
  if (f_len && s_len) return std::min(*f_len, *s_len);
  if (f_len) return f_len;
  return s_len;
}

void MultiplierOperator::validate_coverage() const {
  const auto v_len = vectors_.length();
  if (!v_len) return;
  const auto eff = effective_length();
  if (!eff || *eff > *v_len)
    throw InvalidDimensions("vector sequence is shorter than the active multiplier terms");
}

MultiplierOperator MultiplierOperator::with_symbol(SymbolSequence symbol) const {
  MultiplierOperator op = *this;
  op.symbol_ = std::move(symbol);
  op.validate_coverage();
  return op;
}

MultiplierOperator MultiplierOperator::with_vectors(VectorSequence vectors) const {
  MultiplierOperator op = *this;
  op.vectors_ = std::move(vectors);
  op.validate_coverage();
  return op;
}

MultiplierOperator assemble(SymbolSequence symbol, FunctionalSequence functionals, VectorSequence vectors,
                            PointedMetricSpace space, double p, double b, double d) {
  if (!(p > 1.0) || std::isinf(p))
    throw InvalidExponent("multiplier exponent must satisfy 1 < p < infinity (conjugate q must be finite)");
  const double q = p / (p - 1.0);
  if (std::abs(1.0 / p + 1.0 / q - 1.0) > kConjugateTolerance) throw InvalidExponent("p and q are not conjugate");
  if (!(b > 0.0) || !(d > 0.0) || !std::isfinite(b) || !std::isfinite(d))
    throw NonpositiveBound("Bessel bounds b and d must be positive and finite");
  if (!functionals.pointed()) throw NotPointed("multiplier functionals must vanish at the basepoint");

  const std::size_t probe =
      functionals.length() ? std::min(*functionals.length(), kPointednessProbeTerms) : kPointednessProbeTerms;
  const auto at_base = functionals.values(space.basepoint(), probe);
  for (std::size_t n = 0; n < at_base.size(); ++n) {
    if (!functionals.term_codomain(n).is_scalar())
      throw NonScalarFunctional("multiplier functionals must be scalar-valued");
    if (std::abs(at_base[n][0]) > kBasepointTolerance) {
      std::ostringstream os;
      os << "functional " << n << " does not vanish at the basepoint (value " << at_base[n][0] << ")";
      throw NotPointed(os.str());
    }
  }
  MultiplierOperator op(std::move(symbol), std::move(functionals), std::move(vectors), std::move(space), p, q, b,
                        d);
  op.validate_coverage();
  return op;
}

namespace {

Vector combine(const MultiplierOperator& op, const std::vector<Vector>& coefficients) {
  std::vector<Vector> parts;
  for (std::size_t n = 0; n < coefficients.size(); ++n) {
    const double c = op.symbol()[n] * coefficients[n][0];
    if (c == 0.0) continue;
    parts.push_back(scaled(op.vectors().term(n), c));
  }
  Vector v = tree_sum(parts);
  if (const auto dim = op.codomain().dimension()) v.resize(*dim, 0.0);
  return v;
}

double holder_tail(const MultiplierOperator& op, std::size_t N, const Point& x, const Point& y) {
  const double lam = op.symbol().sup_norm();
  if (lam == 0.0) return 0.0;
  return op.d() * lam * op.functionals().tail_bound(N, x, y, op.p());
}

// Smallest N whose Hölder tail bound is within tolerance.
std::size_t choose_terms(const MultiplierOperator& op, const Point& x, const Point& y, double tolerance,
                         double& remainder) {
  remainder = 0.0;
  if (const auto eff = op.effective_length()) return *eff;
  if (op.symbol().sup_norm() == 0.0) return 0;
  if (!op.functionals().has_tail_bound()) throw NoTailBound("infinite multiplier data without a tail bound");
  const std::size_t cap = op.functionals().index_cap();
  for (std::size_t N = 0; N <= cap; ++N) {
    const double r = holder_tail(op, N, x, y);
    if (r <= tolerance) {
      remainder = r;
      return N;
    }
  }
  std::ostringstream os;
  os << "multiplier tail does not reach tolerance " << tolerance << " within index cap " << cap;
  throw ToleranceUnreachable(os.str());
}

struct QuotientScan {
  LipschitzEstimate estimate;
  double error = 0.0;
};

QuotientScan scan_quotients(const MultiplierOperator& op, const PairSample& pairs, double tolerance) {
  if (pairs.empty()) throw InvalidArgument("operator norm estimation needs a nonempty pair sample");
  QuotientScan scan;
  scan.estimate.strategy = pairs.strategy;
  scan.estimate.seed = pairs.seed;
  const MetricSpace& space = op.space().base();
  const double min_sep = kMinRelativeSeparation * space.diameter_estimate();
  for (const auto& pair : pairs.pairs) {
    const double dist = space.distance(pair.first, pair.second);
    if (dist <= min_sep) {
      ++scan.estimate.pairs_skipped;
      continue;
    }
    ++scan.estimate.pairs_used;
    const Evaluation ev = apply_difference(op, pair.first, pair.second, tolerance * dist / 10.0);
    const double quotient = op.codomain().norm(ev.value) / dist;
    scan.error = std::max(scan.error, ev.certificate.remainder_bound / dist);
    if (!scan.estimate.witness || quotient > scan.estimate.lower_bound) {
      scan.estimate.lower_bound = quotient;
      scan.estimate.witness = pair;
    }
  }
  return scan;
}

}  // namespace

Evaluation apply(const MultiplierOperator& op, const Point& x, double tolerance) {
  Evaluation ev;
  const Point& base = op.space().basepoint();
  const std::size_t N = choose_terms(op, x, base, tolerance, ev.certificate.remainder_bound);
  ev.certificate.truncation_index = N;
  ev.certificate.formula = TruncationCertificate::Formula::holder_tail;
  ev.value = combine(op, op.functionals().values(x, N));
  return ev;
}

Evaluation apply_truncated(const MultiplierOperator& op, const Point& x, std::size_t terms) {
  Evaluation ev;
  const auto eff = op.effective_length();
  const std::size_t N = eff ? std::min(*eff, terms) : terms;
  ev.certificate.truncation_index = N;
  ev.certificate.formula = TruncationCertificate::Formula::user_fixed;
  ev.certificate.remainder_bound = (eff && N >= *eff) ? 0.0 : holder_tail(op, N, x, op.space().basepoint());
  ev.value = combine(op, op.functionals().values(x, N));
  return ev;
}

Evaluation apply_difference(const MultiplierOperator& op, const Point& x, const Point& y, double tolerance) {
  Evaluation ev;
  const std::size_t N = choose_terms(op, x, y, tolerance, ev.certificate.remainder_bound);
  ev.certificate.truncation_index = N;
  ev.certificate.formula = TruncationCertificate::Formula::holder_tail;
  ev.value = combine(op, op.functionals().differences(x, y, N));
  return ev;
}

double lip_norm_upper_bound(const MultiplierOperator& op) { return op.b() * op.d() * op.symbol().sup_norm(); }

OperatorNormEstimate empirical_lip_norm(const MultiplierOperator& op, const PairSample& pairs, double tolerance) {
  const QuotientScan scan = scan_quotients(op, pairs, tolerance);
  OperatorNormEstimate out{scan.estimate, scan.error, lip_norm_upper_bound(op)};
  if (out.estimate.lower_bound - out.quotient_error > out.upper_bound + tolerance) {
    std::ostringstream os;
    os << "empirical Lipschitz norm " << out.estimate.lower_bound << " at (" << out.estimate.witness->first
       << ", " << out.estimate.witness->second << ") exceeds b*d*||lambda||_inf = " << out.upper_bound;
    throw BoundViolated(os.str(), out.estimate.lower_bound, out.upper_bound);
  }
  return out;
}

MultiplierOperator shifted_multiplier(SymbolSequence symbol, const FunctionalSequence& unpointed,
                                      VectorSequence vectors, const MetricSpace& space, const Point& z, double p,
                                      double b, double d) {
  return assemble(std::move(symbol), unpointed.shifted(z), std::move(vectors), PointedMetricSpace(space, z), p, b,
                  d);
}

MultiplierOperator finite_rank_truncation(const MultiplierOperator& op, std::size_t m) {
  return op.with_symbol(op.symbol().truncated(m));
}

MultiplierOperator tail_operator(const MultiplierOperator& op, std::size_t m) {
  return op.with_symbol(op.symbol().tail_from(m));
}

double compactness_tail_gap(const MultiplierOperator& op, std::size_t m) {
  return op.b() * op.d() * op.symbol().tail_sup(m);
}

DifferenceQuotientSample difference_quotient_sample(const MultiplierOperator& op, const PairSample& pairs,
                                                    double tolerance) {
  if (pairs.empty()) throw InvalidArgument("difference quotient sample needs a nonempty pair sample");
  DifferenceQuotientSample sample;
  const MetricSpace& space = op.space().base();
  for (const auto& pair : pairs.pairs) {
    const double dist = space.distance(pair.first, pair.second);
    if (dist <= 0.0) continue;
    const Evaluation ev = apply_difference(op, pair.first, pair.second, tolerance * dist);
    sample.vectors.push_back(scaled(ev.value, 1.0 / dist));
    sample.pairs.push_back(pair);
    sample.max_error = std::max(sample.max_error, ev.certificate.remainder_bound / dist);
  }
  return sample;
}

std::size_t covering_number_estimate(const DifferenceQuotientSample& sample, const NormedSpace& space,
                                     double epsilon) {
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  std::vector<const Vector*> centers;
  for (const auto& v : sample.vectors) {
    const bool covered =
        std::any_of(centers.begin(), centers.end(), [&](const Vector* c) { return space.distance(v, *c) <= epsilon; });
    if (!covered) centers.push_back(&v);
  }
  return centers.size();
}

PerturbationReport symbol_perturbation_check(const MultiplierOperator& op, const SymbolSequence& symbol2,
                                             const PairSample& pairs, double tolerance) {
  const auto delta = difference(symbol2, op.symbol());
  if (!delta) throw MissingPNorm("symbols do not share a family; ||lambda' - lambda||_p is not available");
  const auto pn = delta->p_norm(op.p());
  if (!pn) throw MissingPNorm("||lambda' - lambda||_p is not finite or not known in closed form");

  PerturbationReport report;
  report.bound = op.b() * op.d() * *pn;
  const QuotientScan scan = scan_quotients(op.with_symbol(*delta), pairs, tolerance);
  report.empirical = scan.estimate.lower_bound;
  report.quotient_error = scan.error;
  report.witness = scan.estimate.witness;
  report.violation = report.empirical - report.quotient_error > report.bound + tolerance;
  return report;
}

PerturbationReport vector_perturbation_check(const MultiplierOperator& op, const VectorSequence& vectors2,
                                             const PairSample& pairs, double tolerance) {
  const auto delta = vectors2.finite_difference(op.vectors());
  if (!delta) throw InfinitePerturbation("vector perturbation has no finite support");
  const auto lam_p = op.symbol().p_norm(op.p());
  if (!lam_p) throw MissingPNorm("symbol is not in l^p (or its p-norm is not known in closed form)");

  const NormedSpace& space = op.codomain();
  Vector norms;
  for (const auto& [n, v] : *delta) norms.push_back(space.norm(v));

  PerturbationReport report;
  report.bound = op.b() * *lam_p * (norms.empty() ? 0.0 : lp_norm(norms, op.q()));

  const std::size_t len = delta->empty() ? 0 : delta->rbegin()->first + 1;
  const std::size_t zero_len = space.dimension() ? *space.dimension() : 1;
  std::vector<Vector> list(len, Vector(zero_len, 0.0));
  for (const auto& [n, v] : *delta) list[n] = v;
  const MultiplierOperator diff_op = op.with_symbol(op.symbol().truncated(len))
                                         .with_vectors(VectorSequence::from_list(space, std::move(list)));
  const QuotientScan scan = scan_quotients(diff_op, pairs, tolerance);
  report.empirical = scan.estimate.lower_bound;
  report.quotient_error = scan.error;
  report.witness = scan.estimate.witness;
  report.violation = report.empirical - report.quotient_error > report.bound + tolerance;
  return report;
}

std::optional<SeparationWitness> injectivity_separation(const MultiplierOperator& op, const SymbolSequence& mu,
                                                        const std::vector<Point>& candidates,
                                                        double tolerance) {
  const auto& riesz = op.vectors().declared_riesz_bounds();
  if (!riesz || !(riesz->a > 0.0)) throw NotRiesz("injectivity needs a q-Riesz vector sequence with a > 0");

  const auto delta = difference(op.symbol(), mu);
  const std::size_t cap = op.functionals().index_cap();
  std::size_t scan_end = cap;
  if (delta) {
    if (delta->is_identically_zero()) throw SymbolsEqual("symbols coincide");
    if (const auto end = delta->support_end()) scan_end = *end;
  }
  if (const auto len = op.functionals().length()) scan_end = std::min(scan_end, *len);

  auto diff_at = [&](std::size_t n) { return delta ? (*delta)[n] : op.symbol()[n] - mu[n]; };
  std::vector<std::size_t> differing;
  for (std::size_t n = 0; n < scan_end; ++n)
    if (diff_at(n) != 0.0) differing.push_back(n);
  if (differing.empty()) {
    if (!delta) throw SymbolsEqual("symbols coincide on every scanned index");
    return std::nullopt;
  }

  // ||M_lambda(x) - M_mu(x)||, minus the certificates when evaluation is truncated.
  std::vector<std::optional<double>> separations(candidates.size());
  auto separation = [&](std::size_t c) {
    if (!separations[c]) {
      if (delta) {
        const Evaluation ev = apply(op.with_symbol(*delta), candidates[c], tolerance / 10.0);
        separations[c] = op.codomain().norm(ev.value) - ev.certificate.remainder_bound;
      } else {
        const Evaluation a = apply(op, candidates[c], tolerance / 20.0);
        const Evaluation b = apply(op.with_symbol(mu), candidates[c], tolerance / 20.0);
        separations[c] = op.codomain().distance(a.value, b.value) - a.certificate.remainder_bound -
                         b.certificate.remainder_bound;
      }
    }
    return *separations[c];
  };

  const std::size_t max_index = differing.back() + 1;
  std::vector<std::vector<Vector>> values;
  values.reserve(candidates.size());
  for (const auto& x : candidates) values.push_back(op.functionals().values(x, max_index));

  for (std::size_t n : differing) {
    std::optional<SeparationWitness> best;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const double threshold = riesz->a * std::abs(diff_at(n)) * std::abs(values[c][n][0]);
      if (threshold <= tolerance) continue;
      const double sep = separation(c);
      if (sep > threshold - tolerance && (!best || sep > best->separation))
        best = SeparationWitness{candidates[c], n, sep, threshold};
    }
    if (best) return best;
  }
  return std::nullopt;
}

}  // namespace lipframe
