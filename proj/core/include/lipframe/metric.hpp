#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lipframe/errors.hpp"
#include "lipframe/numeric.hpp"

namespace lipframe {

/// A point of a metric space: a real scalar, a real vector, or a discrete label.
class Point {
 public:
  using Payload = std::variant<double, Vector, std::string>;

  Point(double x) : payload_(x) {}  // NOLINT(google-explicit-constructor)
  Point(Vector v) : payload_(std::move(v)) {}  // NOLINT(google-explicit-constructor)
  static Point label(std::string name) { return Point(Payload(std::move(name))); }

  bool is_scalar() const { return std::holds_alternative<double>(payload_); }
  bool is_vector() const { return std::holds_alternative<Vector>(payload_); }
  bool is_label() const { return std::holds_alternative<std::string>(payload_); }

  double scalar() const;
  const Vector& vector() const;
  const std::string& name() const;
  const Payload& payload() const { return payload_; }

  friend bool operator==(const Point&, const Point&) = default;

 private:
  explicit Point(Payload p) : payload_(std::move(p)) {}
  Payload payload_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

inline constexpr double kAxiomTolerance = 1e-12;

/// A metric space: a finite point set with a distance matrix, a real
/// interval [a,b], or R^n with an l^r norm. Immutable after construction.
class MetricSpace {
 public:
  enum class Kind { finite, interval, euclidean };

  Kind kind() const { return kind_; }
  bool is_finite() const { return kind_ == Kind::finite; }

  double distance(const Point& x, const Point& y) const;
  bool contains(const Point& x) const;

  /// Finite spaces only.
  const std::vector<Point>& points() const { return points_; }
  const std::vector<std::vector<double>>& distance_matrix() const { return matrix_; }
  std::optional<std::size_t> index_of(const Point& x) const;

  /// Interval endpoints.
  double lower() const { return lower_; }
  double upper() const { return upper_; }

  /// Euclidean dimension and norm exponent.
  std::size_t dimension() const { return dimension_; }
  double norm_exponent() const { return norm_exponent_; }

  /// Half-width of the cube [-R, R]^n that random sampling draws from on R^n.
  double sampling_radius() const { return sampling_radius_; }
  MetricSpace with_sampling_radius(double radius) const;

  /// Exact for finite and interval spaces; for R^n the diameter of the
  /// sampling cube.
  double diameter_estimate() const;

  std::string describe() const;

 private:
  friend MetricSpace make_finite_space(std::vector<Point>, std::vector<std::vector<double>>);
  friend MetricSpace make_interval_space(double, double);
  friend MetricSpace make_euclidean_space(std::size_t, double);

  MetricSpace() = default;

  Kind kind_ = Kind::finite;
  std::vector<Point> points_;
  std::vector<std::vector<double>> matrix_;
  double lower_ = 0.0;
  double upper_ = 0.0;
  std::size_t dimension_ = 0;
  double norm_exponent_ = 2.0;
  double sampling_radius_ = 1.0;
};

/// Validates every axiom exhaustively; throws AxiomViolation with the first
/// offending indices.
MetricSpace make_finite_space(std::vector<Point> points, std::vector<std::vector<double>> distances);
MetricSpace make_interval_space(double a, double b);
MetricSpace make_euclidean_space(std::size_t n, double norm_exponent);

/// Reads "N", then N labels, then N rows of N distances (whitespace separated).
MetricSpace load_finite_space(std::istream& in);
MetricSpace load_finite_space_file(const std::string& path);

class PointedMetricSpace {
 public:
  PointedMetricSpace(MetricSpace base, Point basepoint);

  const MetricSpace& base() const { return base_; }
  const Point& basepoint() const { return basepoint_; }
  double distance(const Point& x, const Point& y) const { return base_.distance(x, y); }

 private:
  MetricSpace base_;
  Point basepoint_;
};

enum class SamplingStrategy { exhaustive, uniform_random, local_perturbation, user_supplied };

const char* to_string(SamplingStrategy s);
SamplingStrategy parse_strategy(const std::string& name);

using PointPair = std::pair<Point, Point>;

/// Pairs of distinct points together with the metadata needed to interpret
/// any sup/inf estimate computed from them.
struct PairSample {
  std::vector<PointPair> pairs;
  SamplingStrategy strategy = SamplingStrategy::user_supplied;
  std::uint64_t seed = 0;
  std::size_t requested = 0;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
};

/// Deterministic in (space, strategy, count, seed). Duplicate unordered pairs
/// are dropped, keeping first occurrences. Random strategies generate
/// sequentially, so a smaller count yields a prefix of a larger one.
PairSample sample_pairs(const MetricSpace& space, SamplingStrategy strategy, std::size_t count,
                        std::uint64_t seed);

/// Wraps caller-provided pairs; rejects pairs at zero distance.
PairSample user_pairs(const MetricSpace& space, std::vector<PointPair> pairs);

/// Returns a copy of `sample` extended with (basepoint, x) for every distinct
/// point x occurring in it.
PairSample with_basepoint_pairs(const PointedMetricSpace& space, const PairSample& sample);

/// Draws `count` random points from the space (finite spaces sample members).
std::vector<Point> sample_points(const MetricSpace& space, std::size_t count, std::uint64_t seed);

/// Checks positivity, symmetry and the triangle inequality on `count` random
/// triples (exhaustively on finite spaces). Returns the first violation found.
std::optional<AxiomViolation> check_axioms_sampled(const MetricSpace& space, std::size_t count,
                                                   std::uint64_t seed);

}  // namespace lipframe
