#include "lipframe/metric.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace lipframe {

const char* to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::positivity: return "positivity";
    case Axiom::symmetry: return "symmetry";
    case Axiom::triangle: return "triangle";
  }
  return "unknown";
}

namespace {

std::string axiom_message(Axiom kind, const std::vector<std::size_t>& witness, double excess) {
  std::ostringstream os;
  os << "metric axiom violated: " << to_string(kind) << " at (";
  for (std::size_t i = 0; i < witness.size(); ++i) os << (i ? "," : "") << witness[i];
  os << "), excess " << excess;
  return os.str();
}

}  // namespace

AxiomViolation::AxiomViolation(Axiom kind, std::vector<std::size_t> witness, double excess)
    : Error(axiom_message(kind, witness, excess)),
      kind_(kind),
      witness_(std::move(witness)),
      excess_(excess) {}

double Point::scalar() const {
  if (const auto* x = std::get_if<double>(&payload_)) return *x;
  throw InvalidArgument("point is not a scalar");
}

const Vector& Point::vector() const {
  if (const auto* v = std::get_if<Vector>(&payload_)) return *v;
  throw InvalidArgument("point is not a vector");
}

const std::string& Point::name() const {
  if (const auto* s = std::get_if<std::string>(&payload_)) return *s;
  throw InvalidArgument("point is not a label");
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  if (p.is_scalar()) return os << p.scalar();
  if (p.is_label()) return os << p.name();
  os << '(';
  const auto& v = p.vector();
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os << ')';
}

// ---------------------------------------------------------------------------
// MetricSpace

double MetricSpace::distance(const Point& x, const Point& y) const {
  switch (kind_) {
    case Kind::finite: {
      const auto i = index_of(x);
      const auto j = index_of(y);
      if (!i || !j) throw InvalidArgument("point does not belong to the finite space");
      return matrix_[*i][*j];
    }
    case Kind::interval:
      return std::abs(x.scalar() - y.scalar());
    case Kind::euclidean: {
      const auto& u = x.vector();
      const auto& v = y.vector();
      if (u.size() != dimension_ || v.size() != dimension_)
        throw InvalidArgument("vector point has the wrong dimension");
      return lp_norm(subtract(u, v), norm_exponent_);
    }
  }
  return 0.0;
}

bool MetricSpace::contains(const Point& x) const {
  switch (kind_) {
    case Kind::finite: return index_of(x).has_value();
    case Kind::interval: return x.is_scalar() && x.scalar() >= lower_ && x.scalar() <= upper_;
    case Kind::euclidean: return x.is_vector() && x.vector().size() == dimension_;
  }
  return false;
}

std::optional<std::size_t> MetricSpace::index_of(const Point& x) const {
  const auto it = std::find(points_.begin(), points_.end(), x);
  if (it == points_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - points_.begin());
}

MetricSpace MetricSpace::with_sampling_radius(double radius) const {
  if (!(radius > 0.0)) throw InvalidArgument("sampling radius must be positive");
  MetricSpace copy = *this;
  copy.sampling_radius_ = radius;
  return copy;
}

double MetricSpace::diameter_estimate() const {
  switch (kind_) {
    case Kind::finite: {
      double m = 0.0;
      for (const auto& row : matrix_)
        for (double d : row) m = std::max(m, d);
      return m;
    }
    case Kind::interval: return upper_ - lower_;
    case Kind::euclidean: {
      Vector corner(dimension_, 2.0 * sampling_radius_);
      return lp_norm(corner, norm_exponent_);
    }
  }
  return 0.0;
}

std::string MetricSpace::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::finite: os << "finite(" << points_.size() << ")"; break;
    case Kind::interval: os << "interval[" << lower_ << "," << upper_ << "]"; break;
    case Kind::euclidean: os << "euclidean(n=" << dimension_ << ",r=" << norm_exponent_ << ")"; break;
  }
  return os.str();
}

MetricSpace make_finite_space(std::vector<Point> points, std::vector<std::vector<double>> distances) {
  const std::size_t n = points.size();
  if (distances.size() != n) throw InvalidDimensions("distance matrix must have one row per point");
  for (const auto& row : distances)
    if (row.size() != n) throw InvalidArgument("distance matrix must be square");
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (points[i] == points[j]) throw InvalidArgument("duplicate point in finite space");

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double dij = distances[i][j];
      if (!std::isfinite(dij) || dij < 0.0) throw AxiomViolation(Axiom::positivity, {i, j}, -dij);
      if (i == j && dij > kAxiomTolerance) throw AxiomViolation(Axiom::positivity, {i, j}, dij);
      if (i != j && dij <= 0.0) throw AxiomViolation(Axiom::positivity, {i, j}, 0.0);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double gap = std::abs(distances[i][j] - distances[j][i]);
      if (gap > kAxiomTolerance) throw AxiomViolation(Axiom::symmetry, {i, j}, gap);
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const double excess = distances[i][k] - (distances[i][j] + distances[j][k]);
        if (excess > kAxiomTolerance) throw AxiomViolation(Axiom::triangle, {i, j, k}, excess);
      }

  MetricSpace space;
  space.kind_ = MetricSpace::Kind::finite;
  space.points_ = std::move(points);
  space.matrix_ = std::move(distances);
  return space;
}

MetricSpace make_interval_space(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
    throw InvalidInterval("interval requires finite endpoints with a < b");
  MetricSpace space;
  space.kind_ = MetricSpace::Kind::interval;
  space.lower_ = a;
  space.upper_ = b;
  return space;
}

MetricSpace make_euclidean_space(std::size_t n, double norm_exponent) {
  if (n == 0) throw InvalidDimensions("Euclidean space needs dimension >= 1");
  if (!(norm_exponent >= 1.0)) throw InvalidExponent("norm exponent must be >= 1");
  MetricSpace space;
  space.kind_ = MetricSpace::Kind::euclidean;
  space.dimension_ = n;
  space.norm_exponent_ = norm_exponent;
  return space;
}

MetricSpace load_finite_space(std::istream& in) {
  std::size_t n = 0;
  if (!(in >> n) || n == 0) throw InvalidArgument("finite space file: expected a positive point count");
  std::vector<Point> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string label;
    if (!(in >> label)) throw InvalidArgument("finite space file: missing point label");
    points.push_back(Point::label(label));
  }
  std::vector<std::vector<double>> matrix(n, std::vector<double>(n));
  for (auto& row : matrix)
    for (double& d : row)
      if (!(in >> d)) throw InvalidArgument("finite space file: missing distance entry");
  return make_finite_space(std::move(points), std::move(matrix));
}

MetricSpace load_finite_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open finite space file: " + path);
  return load_finite_space(in);
}

PointedMetricSpace::PointedMetricSpace(MetricSpace base, Point basepoint)
    : base_(std::move(base)), basepoint_(std::move(basepoint)) {
  if (!base_.contains(basepoint_)) throw InvalidArgument("basepoint does not belong to the space");
}

// ---------------------------------------------------------------------------
// Sampling

const char* to_string(SamplingStrategy s) {
  switch (s) {
    case SamplingStrategy::exhaustive: return "exhaustive";
    case SamplingStrategy::uniform_random: return "uniform_random";
    case SamplingStrategy::local_perturbation: return "local_perturbation";
    case SamplingStrategy::user_supplied: return "user_supplied";
  }
  return "unknown";
}

SamplingStrategy parse_strategy(const std::string& name) {
  if (name == "exhaustive") return SamplingStrategy::exhaustive;
  if (name == "uniform_random" || name == "uniform") return SamplingStrategy::uniform_random;
  if (name == "local_perturbation" || name == "local") return SamplingStrategy::local_perturbation;
  if (name == "user_supplied") return SamplingStrategy::user_supplied;
  throw InvalidArgument("unknown sampling strategy: " + name);
}

namespace {

// Separation scales used by local perturbation, relative to the diameter.
constexpr double kLocalScales[] = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
constexpr std::size_t kLocalScaleCount = std::size(kLocalScales);

Point random_point(const MetricSpace& space, Rng& rng) {
  switch (space.kind()) {
    case MetricSpace::Kind::finite:
      return space.points()[rng.index(space.points().size())];
    case MetricSpace::Kind::interval:
      return rng.uniform(space.lower(), space.upper());
    case MetricSpace::Kind::euclidean: {
      Vector v(space.dimension());
      const double r = space.sampling_radius();
      for (double& c : v) c = rng.uniform(-r, r);
      return v;
    }
  }
  return 0.0;
}

Point perturbed_point(const MetricSpace& space, const Point& base, double scale, Rng& rng) {
  if (space.kind() == MetricSpace::Kind::interval) {
    const double step = scale * (space.upper() - space.lower());
    double y = base.scalar() + (rng.uniform() < 0.5 ? -step : step);
    if (y < space.lower() || y > space.upper()) y = 2.0 * base.scalar() - y;
    return std::clamp(y, space.lower(), space.upper());
  }
  Vector direction(space.dimension());
  for (double& c : direction) c = rng.uniform(-1.0, 1.0);
  double norm = lp_norm(direction, space.norm_exponent());
  if (norm == 0.0) {
    direction[0] = 1.0;
    norm = lp_norm(direction, space.norm_exponent());
  }
  const double step = scale * space.diameter_estimate() / norm;
  Vector y = base.vector();
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += step * direction[i];
  return y;
}

struct PayloadPairLess {
  bool operator()(const std::pair<Point::Payload, Point::Payload>& a,
                  const std::pair<Point::Payload, Point::Payload>& b) const {
    return a < b;
  }
};

class PairCollector {
 public:
  PairCollector(const MetricSpace& space, PairSample& out) : space_(space), out_(out) {}

  bool add(Point x, Point y) {
    if (x == y) return false;
    if (space_.distance(x, y) <= 0.0) return false;
    auto key = y.payload() < x.payload() ? std::make_pair(y.payload(), x.payload())
                                         : std::make_pair(x.payload(), y.payload());
    if (!seen_.insert(std::move(key)).second) return false;
    out_.pairs.emplace_back(std::move(x), std::move(y));
    return true;
  }

 private:
  const MetricSpace& space_;
  PairSample& out_;
  std::set<std::pair<Point::Payload, Point::Payload>, PayloadPairLess> seen_;
};

}  // namespace

PairSample sample_pairs(const MetricSpace& space, SamplingStrategy strategy, std::size_t count,
                        std::uint64_t seed) {
  if (count == 0) throw InvalidArgument("pair count must be >= 1");
  PairSample sample;
  sample.strategy = strategy;
  sample.seed = seed;
  sample.requested = count;
  PairCollector collector(space, sample);

  if (strategy == SamplingStrategy::user_supplied)
    throw InvalidArgument("user_supplied samples are built with user_pairs()");

  if (strategy == SamplingStrategy::exhaustive) {
    if (!space.is_finite())
      throw ExhaustiveOnInfinite("exhaustive sampling requires a finite space, got " + space.describe());
    const auto& pts = space.points();
    for (std::size_t i = 0; i < pts.size(); ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j) collector.add(pts[i], pts[j]);
    return sample;
  }

  Rng rng(seed);
  std::size_t target = count;
  if (space.is_finite()) {
    const std::size_t n = space.points().size();
    target = std::min(count, n * (n - 1) / 2);
  }
  // Bound the number of draws so that degenerate spaces cannot loop forever.
  const std::size_t max_draws = 64 * count + 1024;
  std::size_t draws = 0;
  while (sample.pairs.size() < target && draws < max_draws) {
    const std::size_t k = draws++;
    Point x = random_point(space, rng);
    if (strategy == SamplingStrategy::local_perturbation && !space.is_finite()) {
      Point y = perturbed_point(space, x, kLocalScales[k % kLocalScaleCount], rng);
      collector.add(std::move(x), std::move(y));
    } else {
      Point y = random_point(space, rng);
      collector.add(std::move(x), std::move(y));
    }
  }
  return sample;
}

PairSample user_pairs(const MetricSpace& space, std::vector<PointPair> pairs) {
  PairSample sample;
  sample.strategy = SamplingStrategy::user_supplied;
  sample.requested = pairs.size();
  PairCollector collector(space, sample);
  for (auto& [x, y] : pairs) {
    if (space.distance(x, y) <= 0.0) throw ZeroDistance("user-supplied pair has zero distance");
    collector.add(std::move(x), std::move(y));
  }
  return sample;
}

PairSample with_basepoint_pairs(const PointedMetricSpace& space, const PairSample& sample) {
  PairSample out;
  out.strategy = sample.strategy;
  out.seed = sample.seed;
  out.requested = sample.requested;
  PairCollector collector(space.base(), out);
  std::vector<Point> seen_points;
  std::set<Point::Payload> seen;
  for (const auto& [x, y] : sample.pairs) {
    collector.add(x, y);
    for (const Point* p : {&x, &y})
      if (seen.insert(p->payload()).second) seen_points.push_back(*p);
  }
  for (const auto& p : seen_points) collector.add(space.basepoint(), p);
  return out;
}

std::vector<Point> sample_points(const MetricSpace& space, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_point(space, rng));
  return out;
}

std::optional<AxiomViolation> check_axioms_sampled(const MetricSpace& space, std::size_t count,
                                                   std::uint64_t seed) {
  if (space.is_finite()) {
    try {
      make_finite_space(space.points(), space.distance_matrix());
    } catch (const AxiomViolation& v) {
      return v;
    }
    return std::nullopt;
  }
  Rng rng(seed);
  for (std::size_t t = 0; t < count; ++t) {
    const Point x = random_point(space, rng);
    const Point y = random_point(space, rng);
    const Point z = random_point(space, rng);
    const double dxy = space.distance(x, y);
    const double dyx = space.distance(y, x);
    const double dyz = space.distance(y, z);
    const double dxz = space.distance(x, z);
    if (space.distance(x, x) > kAxiomTolerance || dxy < 0.0 || (!(x == y) && dxy <= 0.0))
      return AxiomViolation(Axiom::positivity, {3 * t, 3 * t + 1}, dxy);
    if (std::abs(dxy - dyx) > kAxiomTolerance)
      return AxiomViolation(Axiom::symmetry, {3 * t, 3 * t + 1}, std::abs(dxy - dyx));
    const double excess = dxz - (dxy + dyz);
    if (excess > kAxiomTolerance * std::max(1.0, dxz))
      return AxiomViolation(Axiom::triangle, {3 * t, 3 * t + 1, 3 * t + 2}, excess);
  }
  return std::nullopt;
}

}  // namespace lipframe
