#include "lipframe/lipschitz.hpp"

#include <cmath>
#include <sstream>

namespace lipframe {

NormedSpace::NormedSpace(std::optional<std::size_t> dimension, double exponent)
    : dimension_(dimension), exponent_(exponent) {
  if (!(exponent >= 1.0)) throw InvalidExponent("normed space exponent must be >= 1");
  if (dimension_ && *dimension_ == 0) throw InvalidDimensions("normed space dimension must be >= 1");
}

double NormedSpace::norm(std::span<const double> v) const {
  if (dimension_ && v.size() > *dimension_) throw InvalidDimensions("vector exceeds the space dimension");
  return lp_norm(v, exponent_);
}

double NormedSpace::dual_norm(std::span<const double> phi) const {
  if (dimension_ && phi.size() > *dimension_) throw InvalidDimensions("functional exceeds the space dimension");
  return lp_norm(phi, conjugate_exponent(exponent_));
}

// ---------------------------------------------------------------------------

LipschitzMap::LipschitzMap(NormedSpace codomain, ValueFn value, std::optional<double> declared_lip,
                           bool vanishes_at_basepoint)
    : codomain_(std::move(codomain)),
      value_(std::move(value)),
      declared_lip_(declared_lip),
      vanishes_at_basepoint_(vanishes_at_basepoint) {
  if (declared_lip_ && !(*declared_lip_ >= 0.0)) throw InvalidArgument("declared Lipschitz constant must be >= 0");
}

LipschitzMap LipschitzMap::scalar(ScalarFn f, std::optional<double> declared_lip, bool vanishes_at_basepoint) {
  auto fn = std::move(f);
  LipschitzMap map(NormedSpace::scalars(), [fn](const Point& x) { return Vector{fn(x)}; }, declared_lip,
                   vanishes_at_basepoint);
  return map;
}

double LipschitzMap::scalar_value(const Point& x) const {
  if (!is_scalar()) throw NonScalarFunctional("map is vector-valued");
  return value_(x)[0];
}

Vector LipschitzMap::difference(const Point& x, const Point& y) const {
  if (difference_) return difference_(x, y);
  return subtract(value_(x), value_(y));
}

LipschitzMap LipschitzMap::with_difference(DifferenceFn diff) const {
  LipschitzMap copy = *this;
  copy.difference_ = std::move(diff);
  return copy;
}

LipschitzMap LipschitzMap::with_declared_lip(std::optional<double> lip) const {
  LipschitzMap copy = *this;
  copy.declared_lip_ = lip;
  return copy;
}

LipschitzMap LipschitzMap::pointed(bool vanishes) const {
  LipschitzMap copy = *this;
  copy.vanishes_at_basepoint_ = vanishes;
  return copy;
}

// ---------------------------------------------------------------------------

double difference_quotient(const LipschitzMap& f, const MetricSpace& space, const Point& x, const Point& y) {
  const double d = space.distance(x, y);
  if (d <= 0.0) throw ZeroDistance("difference quotient needs distinct points");
  return f.codomain().norm(f.difference(x, y)) / d;
}

namespace {

LipschitzEstimate scan(const LipschitzMap& f, const MetricSpace& space, const PairSample& pairs) {
  if (pairs.empty()) throw InvalidArgument("Lipschitz estimation needs a nonempty pair sample");
  LipschitzEstimate est;
  est.strategy = pairs.strategy;
  est.seed = pairs.seed;
  const double min_sep = kMinRelativeSeparation * space.diameter_estimate();
  for (const auto& pair : pairs.pairs) {
    const double d = space.distance(pair.first, pair.second);
    if (d <= min_sep) {
      ++est.pairs_skipped;
      continue;
    }
    ++est.pairs_used;
    const double q = f.codomain().norm(f.difference(pair.first, pair.second)) / d;
    if (!est.witness || q > est.lower_bound) {
      est.lower_bound = q;
      est.witness = pair;
    }
  }
  if (f.declared_lip() && est.lower_bound > *f.declared_lip() * (1.0 + kDeclaredBoundRelTolerance)) {
    std::ostringstream os;
    os << "observed difference quotient " << est.lower_bound << " at (" << est.witness->first << ", "
       << est.witness->second << ") exceeds declared Lipschitz constant " << *f.declared_lip();
    throw DeclaredBoundViolated(os.str(), est.lower_bound, *f.declared_lip());
  }
  return est;
}

}  // namespace

LipschitzEstimate estimate_lip_number(const LipschitzMap& f, const MetricSpace& space, const PairSample& pairs) {
  return scan(f, space, pairs);
}

LipschitzEstimate lip0_norm_estimate(const LipschitzMap& f, const PointedMetricSpace& space,
                                     const PairSample& pairs) {
  const double at_base = f.codomain().norm(f(space.basepoint()));
  if (!f.vanishes_at_basepoint() || at_base > kBasepointTolerance) {
    std::ostringstream os;
    os << "map does not vanish at the basepoint " << space.basepoint() << " (norm " << at_base << ")";
    throw NotPointed(os.str());
  }
  return scan(f, space.base(), with_basepoint_pairs(space, pairs));
}

LipschitzMap rank_one(const Vector& tau, const NormedSpace& space, const LipschitzMap& f) {
  if (!f.is_scalar()) throw NonScalarFunctional("rank-one operator needs a scalar-valued functional");
  (void)space.norm(tau);
  std::optional<double> lip;
  if (f.declared_lip()) lip = space.norm(tau) * *f.declared_lip();
  LipschitzMap map(
      space, [tau, f](const Point& x) { return scaled(tau, f.scalar_value(x)); }, lip, f.vanishes_at_basepoint());
  return map.with_difference([tau, f](const Point& x, const Point& y) { return scaled(tau, f.difference(x, y)[0]); });
}

LipschitzMap scale(double alpha, const LipschitzMap& f) {
  std::optional<double> lip;
  if (f.declared_lip()) lip = std::abs(alpha) * *f.declared_lip();
  LipschitzMap map(
      f.codomain(), [alpha, f](const Point& x) { return scaled(f(x), alpha); }, lip, f.vanishes_at_basepoint());
  return map.with_difference(
      [alpha, f](const Point& x, const Point& y) { return scaled(f.difference(x, y), alpha); });
}

LipschitzMap identity_map() { return linear_map(1.0); }

LipschitzMap linear_map(double slope) {
  return LipschitzMap::scalar([slope](const Point& x) { return slope * x.scalar(); }, std::abs(slope), true)
      .with_difference([slope](const Point& x, const Point& y) { return Vector{slope * (x.scalar() - y.scalar())}; });
}

LipschitzMap constant_map(double value) {
  return LipschitzMap::scalar([value](const Point&) { return value; }, 0.0, value == 0.0);
}

LipschitzMap sine_map(double amplitude, double frequency) {
  return LipschitzMap::scalar([=](const Point& x) { return amplitude * std::sin(frequency * x.scalar()); },
                              std::abs(amplitude * frequency), true)
      .with_difference([=](const Point& x, const Point& y) {
        // sin u - sin v = 2 cos((u+v)/2) sin((u-v)/2)
        const double u = frequency * x.scalar();
        const double v = frequency * y.scalar();
        return Vector{amplitude * 2.0 * std::cos(0.5 * (u + v)) * std::sin(0.5 * (u - v))};
      });
}

LipschitzMap kink_map(double amplitude, double center) {
  return LipschitzMap::scalar(
      [=](const Point& x) { return amplitude * (std::abs(x.scalar() - center) - std::abs(center)); },
      std::abs(amplitude), true);
}

LipschitzMap square_map() {
  return LipschitzMap::scalar([](const Point& x) { return x.scalar() * x.scalar(); }, std::nullopt, true)
      .with_difference([](const Point& x, const Point& y) {
        return Vector{(x.scalar() - y.scalar()) * (x.scalar() + y.scalar())};
      });
}

}  // namespace lipframe
