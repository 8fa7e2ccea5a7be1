#include "lipframe/frames.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lipframe {

// ---------------------------------------------------------------------------
// FunctionalSequence

FunctionalSequence FunctionalSequence::finite(std::vector<LipschitzMap> terms, bool pointed) {
  FunctionalSequence seq;
  seq.length_ = terms.size();
  seq.pointed_ = pointed;
  for (const auto& t : terms) {
    seq.codomains_.push_back(t.codomain());
    if (pointed && !t.vanishes_at_basepoint()) throw NotPointed("pointed sequence contains a non-pointed term");
  }
  auto shared = std::make_shared<const std::vector<LipschitzMap>>(std::move(terms));
  seq.term_ = [shared](std::size_t n) { return shared->at(n); };
  seq.values_ = [shared](const Point& x, std::size_t count) {
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) out.push_back((*shared)[n](x));
    return out;
  };
  seq.differences_ = [shared](const Point& x, const Point& y, std::size_t count) {
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) out.push_back((*shared)[n].difference(x, y));
    return out;
  };
  return seq;
}

FunctionalSequence FunctionalSequence::infinite(InfiniteParts parts) {
  if (!parts.term || !parts.values || !parts.differences)
    throw InvalidArgument("infinite sequence needs term, values and differences callbacks");
  FunctionalSequence seq;
  seq.pointed_ = parts.pointed;
  seq.index_cap_ = parts.index_cap;
  seq.term_ = std::move(parts.term);
  seq.values_ = std::move(parts.values);
  seq.differences_ = std::move(parts.differences);
  seq.tail_bound_ = std::move(parts.tail_bound);
  return seq;
}

LipschitzMap FunctionalSequence::term(std::size_t n) const {
  if (length_ && n >= *length_) throw InvalidArgument("term index out of range");
  return term_(n);
}

NormedSpace FunctionalSequence::term_codomain(std::size_t n) const {
  if (!length_) return NormedSpace::scalars();
  return codomains_.at(n);
}

std::vector<Vector> FunctionalSequence::values(const Point& x, std::size_t count) const {
  if (length_) count = std::min(count, *length_);
  return values_(x, count);
}

std::vector<Vector> FunctionalSequence::differences(const Point& x, const Point& y, std::size_t count) const {
  if (length_) count = std::min(count, *length_);
  return differences_(x, y, count);
}

double FunctionalSequence::tail_bound(std::size_t N, const Point& x, const Point& y, double p) const {
  if (length_ && N >= *length_) return 0.0;
  if (!tail_bound_) throw NoTailBound("infinite functional sequence has no analytic tail bound");
  return tail_bound_(N, x, y, p);
}

std::optional<KnownBounds> FunctionalSequence::known_bounds(double p) const {
  if (!known_bounds_) return std::nullopt;
  return known_bounds_(p);
}

FunctionalSequence FunctionalSequence::with_known_bounds(KnownBoundsFn fn) const {
  FunctionalSequence copy = *this;
  copy.known_bounds_ = std::move(fn);
  return copy;
}

FunctionalSequence FunctionalSequence::with_index_cap(std::size_t cap) const {
  FunctionalSequence copy = *this;
  copy.index_cap_ = cap;
  return copy;
}

FunctionalSequence FunctionalSequence::named(std::string name) const {
  FunctionalSequence copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

FunctionalSequence FunctionalSequence::shifted(const Point& z) const {
  FunctionalSequence g = *this;
  const FunctionalSequence f = *this;
  g.pointed_ = true;
  g.name_ = name_ + "-shifted";
  g.term_ = [f, z](std::size_t n) {
    const LipschitzMap fn = f.term(n);
    const Vector at_z = fn(z);
    LipschitzMap gn(
        fn.codomain(), [fn, at_z](const Point& x) { return subtract(fn(x), at_z); }, fn.declared_lip(), true);
    return gn.with_difference([fn](const Point& x, const Point& y) { return fn.difference(x, y); });
  };
  g.values_ = [f, z](const Point& x, std::size_t count) {
    auto vx = f.values(x, count);
    const auto vz = f.values(z, count);
    for (std::size_t n = 0; n < vx.size(); ++n) vx[n] = subtract(vx[n], vz[n]);
    return vx;
  };
  return g;
}

FunctionalSequence FunctionalSequence::scaled(double alpha) const {
  FunctionalSequence g = *this;
  const FunctionalSequence f = *this;
  g.term_ = [f, alpha](std::size_t n) { return scale(alpha, f.term(n)); };
  g.values_ = [f, alpha](const Point& x, std::size_t count) {
    auto v = f.values(x, count);
    for (auto& e : v) e = lipframe::scaled(e, alpha);
    return v;
  };
  g.differences_ = [f, alpha](const Point& x, const Point& y, std::size_t count) {
    auto v = f.differences(x, y, count);
    for (auto& e : v) e = lipframe::scaled(e, alpha);
    return v;
  };
  if (tail_bound_) {
    g.tail_bound_ = [f, alpha](std::size_t N, const Point& x, const Point& y, double p) {
      return std::abs(alpha) * f.tail_bound(N, x, y, p);
    };
  }
  if (known_bounds_) {
    g.known_bounds_ = [f, alpha](double p) -> std::optional<KnownBounds> {
      auto kb = f.known_bounds(p);
      if (!kb) return std::nullopt;
      if (kb->a) *kb->a *= std::abs(alpha);
      kb->b *= std::abs(alpha);
      return kb;
    };
  }
  return g;
}

// ---------------------------------------------------------------------------
// Power sums and frame bounds

namespace {

void check_exponent(double p) {
  if (!(p >= 1.0) || std::isinf(p)) throw InvalidExponent("frame exponent p must satisfy 1 <= p < infinity");
}

std::size_t truncation_index(const FunctionalSequence& seq, const Point& x, const Point& y, double p,
                             double tolerance, double& certificate) {
  if (seq.is_finite()) {
    certificate = 0.0;
    return *seq.length();
  }
  if (!seq.has_tail_bound()) throw NoTailBound("infinite functional sequence has no analytic tail bound");
  for (std::size_t N = 0; N <= seq.index_cap(); ++N) {
    const double t = seq.tail_bound(N, x, y, p);
    if (t <= tolerance) {
      certificate = t;
      return N;
    }
  }
  std::ostringstream os;
  os << "tail bound does not reach tolerance " << tolerance << " within index cap " << seq.index_cap();
  throw ToleranceUnreachable(os.str());
}

}  // namespace

PowerSum power_sum(const FunctionalSequence& seq, const Point& x, const Point& y, double p, double tolerance) {
  check_exponent(p);
  PowerSum out;
  out.truncation_index = truncation_index(seq, x, y, p, tolerance, out.certificate);
  const auto diffs = seq.differences(x, y, out.truncation_index);
  Vector powers(diffs.size());
  for (std::size_t n = 0; n < diffs.size(); ++n)
    powers[n] = std::pow(seq.term_codomain(n).norm(diffs[n]), p);
  out.value = std::pow(tree_sum(powers), 1.0 / p);
  return out;
}

FrameBoundEstimate estimate_frame_bounds(const FunctionalSequence& seq, const MetricSpace& space, double p,
                                         const PairSample& pairs, double tolerance) {
  check_exponent(p);
  if (pairs.empty()) throw InvalidArgument("frame bound estimation needs a nonempty pair sample");
  FrameBoundEstimate est;
  est.p = p;
  est.truncation_tolerance = tolerance;
  est.strategy = pairs.strategy;
  est.seed = pairs.seed;
  const double min_sep = kMinRelativeSeparation * space.diameter_estimate();
  for (const auto& pair : pairs.pairs) {
    const double d = space.distance(pair.first, pair.second);
    if (d <= min_sep) {
      ++est.pairs_skipped;
      continue;
    }
    const PowerSum s = power_sum(seq, pair.first, pair.second, p, tolerance * d);
    const double ratio = s.value / d;
    if (est.pairs_used == 0 || ratio < est.a_est) {
      est.a_est = ratio;
      est.a_witness = pair;
    }
    if (est.pairs_used == 0 || ratio > est.b_est) {
      est.b_est = ratio;
      est.b_witness = pair;
    }
    ++est.pairs_used;
    est.truncation_index = std::max(est.truncation_index, s.truncation_index);
    est.max_certificate = std::max(est.max_certificate, s.certificate);
  }
  return est;
}

BesselReport verify_bessel(const FunctionalSequence& seq, const MetricSpace& space, double p, double claimed_b,
                           const PairSample& pairs, double tolerance) {
  if (!(claimed_b > 0.0)) throw NonpositiveBound("claimed Bessel bound must be positive");
  BesselReport report;
  report.claimed_b = claimed_b;
  for (const auto& pair : pairs.pairs) {
    const double d = space.distance(pair.first, pair.second);
    if (d <= 0.0) continue;
    const PowerSum s = power_sum(seq, pair.first, pair.second, p, tolerance * d);
    ++report.pairs_checked;
    if (s.value > claimed_b * d * (1.0 + kDeclaredBoundRelTolerance))
      report.violations.push_back({pair, s.value / d});
  }
  return report;
}

// ---------------------------------------------------------------------------
// VectorSequence

VectorSequence VectorSequence::from_list(NormedSpace space, std::vector<Vector> terms) {
  for (const auto& t : terms) (void)space.norm(t);
  VectorSequence seq(std::move(space));
  seq.base_kind_ = BaseKind::list;
  seq.list_ = std::make_shared<const std::vector<Vector>>(std::move(terms));
  return seq;
}

VectorSequence VectorSequence::standard_basis(NormedSpace space, std::optional<std::size_t> count) {
  if (count && space.dimension() && *count > *space.dimension())
    throw InvalidDimensions("more basis vectors than dimensions");
  VectorSequence seq(std::move(space));
  seq.base_kind_ = BaseKind::standard_basis;
  seq.basis_count_ = count ? count : seq.space_.dimension();
  return seq;
}

std::optional<std::size_t> VectorSequence::length() const {
  if (base_kind_ == BaseKind::list) return list_->size();
  return basis_count_;
}

Vector VectorSequence::term(std::size_t n) const {
  const auto len = length();
  if (len && n >= *len) throw InvalidArgument("vector index out of range");
  Vector v;
  if (base_kind_ == BaseKind::list) {
    v = (*list_)[n];
  } else {
    v.assign(space_.dimension() ? *space_.dimension() : n + 1, 0.0);
    v[n] = 1.0;
  }
  if (const auto it = overlay_.find(n); it != overlay_.end()) v = add(v, it->second);
  return v;
}

VectorSequence VectorSequence::with_declared_q_bessel_bound(std::optional<double> d) const {
  VectorSequence copy = *this;
  copy.declared_d_ = d;
  return copy;
}

VectorSequence VectorSequence::with_declared_riesz_bounds(std::optional<RieszBounds> bounds) const {
  VectorSequence copy = *this;
  copy.declared_riesz_ = bounds;
  return copy;
}

VectorSequence VectorSequence::perturbed(const std::map<std::size_t, Vector>& delta) const {
  VectorSequence copy = *this;
  const auto len = length();
  for (const auto& [n, v] : delta) {
    if (len && n >= *len) throw InvalidArgument("perturbation index out of range");
    (void)space_.norm(v);
    auto& slot = copy.overlay_[n];
    slot = add(slot, v);
  }
  // Perturbed vectors carry no declared constants of their own.
  copy.declared_d_.reset();
  copy.declared_riesz_.reset();
  return copy;
}

bool VectorSequence::same_base(const VectorSequence& other) const {
  if (!(space_ == other.space_) || base_kind_ != other.base_kind_) return false;
  if (base_kind_ == BaseKind::standard_basis) return basis_count_ == other.basis_count_;
  return list_ == other.list_ || *list_ == *other.list_;
}

std::optional<std::map<std::size_t, Vector>> VectorSequence::finite_difference(const VectorSequence& other) const {
  std::map<std::size_t, Vector> diff;
  if (same_base(other)) {
    for (const auto& [n, v] : overlay_) diff[n] = v;
    for (const auto& [n, v] : other.overlay_) diff[n] = subtract(diff[n], v);
  } else {
    const auto la = length();
    const auto lb = other.length();
    if (!la || !lb || *la != *lb) return std::nullopt;
    for (std::size_t n = 0; n < *la; ++n) diff[n] = subtract(term(n), other.term(n));
  }
  std::erase_if(diff, [](const auto& kv) {
    return std::all_of(kv.second.begin(), kv.second.end(), [](double c) { return c == 0.0; });
  });
  return diff;
}

std::string VectorSequence::describe() const {
  std::ostringstream os;
  if (base_kind_ == BaseKind::standard_basis) {
    os << "standard_basis";
  } else {
    os << "list(" << list_->size() << ")";
  }
  os << " r=" << space_.exponent();
  if (!overlay_.empty()) os << " perturbed(" << overlay_.size() << ")";
  return os.str();
}

RieszCheck riesz_sequence_check(const VectorSequence& tau, double q, const std::vector<Vector>& coefficient_samples) {
  if (!(q >= 1.0)) throw InvalidExponent("Riesz exponent q must be >= 1");
  if (coefficient_samples.empty()) throw EmptyCoefficients("no coefficient samples");
  RieszCheck check;
  const auto len = tau.length();
  for (std::size_t s = 0; s < coefficient_samples.size(); ++s) {
    const Vector& c = coefficient_samples[s];
    if (std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; }))
      throw EmptyCoefficients("coefficient sample has no nonzero entry");
    if (len && c.size() > *len) throw InvalidArgument("coefficient sample longer than the vector sequence");
    std::vector<Vector> parts;
    for (std::size_t n = 0; n < c.size(); ++n)
      if (c[n] != 0.0) parts.push_back(scaled(tau.term(n), c[n]));
    const double ratio = tau.space().norm(tree_sum(parts)) / lp_norm(c, q);
    if (s == 0 || ratio < check.a_est) {
      check.a_est = ratio;
      check.a_witness = s;
    }
    if (s == 0 || ratio > check.b_est) {
      check.b_est = ratio;
      check.b_witness = s;
    }
    if (const auto& declared = tau.declared_riesz_bounds()) {
      if (ratio < declared->a * (1.0 - kDeclaredBoundRelTolerance) ||
          ratio > declared->b * (1.0 + kDeclaredBoundRelTolerance))
        check.violations.push_back(s);
    }
  }
  return check;
}

double DualFunctional::operator()(const Vector& v, const NormedSpace& space) const {
  if (kind == Kind::linear) {
    const std::size_t n = std::min(v.size(), data.size());
    Vector products(n);
    for (std::size_t i = 0; i < n; ++i) products[i] = data[i] * v[i];
    return tree_sum(products);
  }
  return space.norm(subtract(v, data)) - space.norm(data);
}

DualFunctional DualFunctional::linear(Vector phi, const NormedSpace& space) {
  DualFunctional f;
  f.kind = Kind::linear;
  f.lip0_norm = space.dual_norm(phi);
  f.data = std::move(phi);
  if (!(f.lip0_norm > 0.0)) throw InvalidArgument("linear functional must be nonzero");
  return f;
}

DualFunctional DualFunctional::distance(Vector w) {
  if (std::all_of(w.begin(), w.end(), [](double c) { return c == 0.0; }))
    throw InvalidArgument("distance functional needs w != 0");
  DualFunctional f;
  f.kind = Kind::distance;
  f.data = std::move(w);
  f.lip0_norm = 1.0;
  return f;
}

std::vector<DualFunctional> sample_dual_functionals(const NormedSpace& space, std::size_t dimension,
                                                    std::size_t count, std::uint64_t seed, bool include_nonlinear) {
  if (dimension == 0) throw InvalidDimensions("functional support must be >= 1");
  Rng rng(seed);
  std::vector<DualFunctional> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Vector v(dimension);
    for (double& c : v) c = rng.uniform(-1.0, 1.0);
    if (std::all_of(v.begin(), v.end(), [](double c) { return c == 0.0; })) v[0] = 1.0;
    if (include_nonlinear && i % 2 == 1) {
      out.push_back(DualFunctional::distance(std::move(v)));
    } else {
      const double norm = space.dual_norm(v);
      out.push_back(DualFunctional::linear(scaled(v, 1.0 / norm), space));
    }
  }
  return out;
}

DualBesselEstimate estimate_dual_bessel_bound(const VectorSequence& tau, double q,
                                              const std::vector<DualFunctional>& functional_samples,
                                              std::size_t max_terms) {
  if (!(q >= 1.0)) throw InvalidExponent("dual Bessel exponent q must be >= 1");
  if (functional_samples.empty()) throw InvalidArgument("no functional samples");
  DualBesselEstimate est;
  const auto len = tau.length();
  est.terms_used = len ? std::min(*len, max_terms) : max_terms;
  std::vector<Vector> terms;
  terms.reserve(est.terms_used);
  for (std::size_t n = 0; n < est.terms_used; ++n) terms.push_back(tau.term(n));
  for (std::size_t s = 0; s < functional_samples.size(); ++s) {
    const auto& h = functional_samples[s];
    Vector values(terms.size());
    for (std::size_t n = 0; n < terms.size(); ++n) values[n] = h(terms[n], tau.space());
    const double ratio = terms.empty() ? 0.0 : lp_norm(values, q) / h.lip0_norm;
    if (!est.witness || ratio > est.d_est) {
      est.d_est = ratio;
      est.witness = s;
    }
  }
  if (const auto& d = tau.declared_q_bessel_bound();
      d && est.d_est > *d * (1.0 + kDeclaredBoundRelTolerance)) {
    std::ostringstream os;
    os << "functional sample " << *est.witness << " gives ratio " << est.d_est
       << " above the declared q-Bessel bound " << *d;
    throw DeclaredBoundViolated(os.str(), est.d_est, *d);
  }
  return est;
}

// ---------------------------------------------------------------------------
// Example frames

MetricSpace two_point_space(double x, double y) {
  if (x == y) throw DegeneratePoints("two-point space needs distinct points");
  const double d = std::abs(x - y);
  return make_finite_space({Point(x), Point(y)}, {{0.0, d}, {d, 0.0}});
}

FunctionalSequence two_point_frame(double x, double y) {
  if (x == y) throw DegeneratePoints("two-point frame needs distinct points");
  const auto swap_value = [x, y](double t) {
    if (t == x) return y;
    if (t == y) return x;
    return x + y - t;
  };
  LipschitzMap identity = LipschitzMap::scalar([](const Point& t) { return t.scalar(); }, 1.0);
  LipschitzMap swap =
      LipschitzMap::scalar([swap_value](const Point& t) { return swap_value(t.scalar()); }, 1.0)
          .with_difference([swap_value](const Point& s, const Point& t) {
            return Vector{swap_value(s.scalar()) - swap_value(t.scalar())};
          });
  return FunctionalSequence::finite({identity, swap})
      .with_known_bounds([](double p) -> std::optional<KnownBounds> {
        const double c = std::pow(2.0, 1.0 / p);
        return KnownBounds{c, c};
      })
      .named("two_point");
}

FunctionalSequence cyclic_shift_frame(std::size_t n, std::size_t m, double p) {
  if (n == 0 || m < n) throw InvalidDimensions("cyclic-shift frame requires m >= n >= 1");
  check_exponent(p);
  const double lip = std::pow(static_cast<double>((m + n - 1) / n), 1.0 / p);
  std::vector<LipschitzMap> terms;
  for (std::size_t j = 0; j < n; ++j) {
    auto select = [n, m, j](const Point& x) {
      const Vector& v = x.vector();
      if (v.size() != n) throw InvalidDimensions("cyclic-shift frame: point has the wrong dimension");
      Vector out(m);
      for (std::size_t k = 0; k < m; ++k) out[k] = v[(j + k) % n];
      return out;
    };
    terms.emplace_back(NormedSpace::finite(m, p), select, lip, true);
  }
  std::ostringstream name;
  name << "cyclic(" << n << "," << m << ")";
  return FunctionalSequence::finite(std::move(terms), true)
      .with_known_bounds([m, p](double r) -> std::optional<KnownBounds> {
        if (r != p) return std::nullopt;
        const double c = std::pow(static_cast<double>(m), 1.0 / p);
        return KnownBounds{c, c};
      })
      .named(name.str());
}

namespace {

// sum_{n >= K} L^n / n!, bounded by its first term over (1 - L/(K+1)).
double exp_remainder_bound(double L, std::size_t K) {
  const double k1 = static_cast<double>(K + 1);
  if (L >= k1) return kInfinity;
  double first = 1.0;
  for (std::size_t i = 1; i <= K; ++i) first *= L / static_cast<double>(i);
  return first / (1.0 - L / k1);
}

std::vector<double> log_powers(double x, std::size_t count) {
  std::vector<double> v(count);
  const double t = std::log(x);
  double term = 1.0;
  for (std::size_t n = 0; n < count; ++n) {
    if (n > 0) term *= t / static_cast<double>(n);
    v[n] = term;
  }
  return v;
}

}  // namespace

FunctionalSequence log_series_frame(double a, double b, std::size_t index_cap) {
  if (!(a > 1.0) || !(b > a) || !std::isfinite(b)) throw InvalidInterval("log-series frame requires 1 < a < b");
  const double L = std::log(b);

  FunctionalSequence::InfiniteParts parts;
  parts.term = [a, L](std::size_t n) {
    double lip = 0.0;
    if (n >= 1) {
      lip = 1.0 / a;
      for (std::size_t i = 1; i < n; ++i) lip *= L / static_cast<double>(i);
    }
    return LipschitzMap::scalar(
        [n](const Point& x) {
          return log_powers(x.scalar(), n + 1)[n];
        },
        lip);
  };
  parts.values = [](const Point& x, std::size_t count) {
    const auto v = log_powers(x.scalar(), count);
    std::vector<Vector> out;
    out.reserve(count);
    for (double e : v) out.push_back(Vector{e});
    return out;
  };
  parts.differences = [](const Point& x, const Point& y, std::size_t count) {
    const auto vx = log_powers(x.scalar(), count);
    const auto vy = log_powers(y.scalar(), count);
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t n = 0; n < count; ++n) out.push_back(Vector{vx[n] - vy[n]});
    return out;
  };
  // Each |f_n(x) - f_n(y)| is at most L^n/n! (both values lie in [0, L^n/n!])
  // and at most |x-y| L^(n-1)/((n-1)! a) (mean value theorem). The l^p norm of
  // the tail is at most its l^1 norm, so the bound holds for every p >= 1.
  parts.tail_bound = [a, L](std::size_t N, const Point& x, const Point& y, double) {
    const std::size_t K = std::max<std::size_t>(N, 1);  // f_0 is constant
    const double gap = std::abs(x.scalar() - y.scalar());
    return std::min(exp_remainder_bound(L, K), gap / a * exp_remainder_bound(L, K - 1));
  };
  parts.index_cap = index_cap;

  std::ostringstream name;
  name << "log_series[" << a << "," << b << "]";
  return FunctionalSequence::infinite(std::move(parts))
      .with_known_bounds([](double p) -> std::optional<KnownBounds> {
        if (p == 1.0) return KnownBounds{1.0, 1.0};
        return KnownBounds{std::nullopt, 1.0};
      })
      .named(name.str());
}

}  // namespace lipframe
