#include "lipframe/numeric.hpp"

#include <algorithm>
#include <cmath>

#include "lipframe/errors.hpp"

namespace lipframe {

namespace {

constexpr std::size_t kLeafSize = 8;

double tree_sum_range(std::span<const double> v) {
  if (v.size() <= kLeafSize) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return tree_sum_range(v.first(half)) + tree_sum_range(v.subspan(half));
}

Vector tree_sum_vectors(std::span<const Vector> v) {
  if (v.empty()) return {};
  if (v.size() == 1) return v[0];
  const std::size_t half = v.size() / 2;
  return add(tree_sum_vectors(v.first(half)), tree_sum_vectors(v.subspan(half)));
}

std::uint64_t splitmix(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

double tree_sum(std::span<const double> values) { return tree_sum_range(values); }

Vector tree_sum(std::span<const Vector> vectors) { return tree_sum_vectors(vectors); }

double lp_norm(std::span<const double> v, double r) {
  if (r < 1.0) throw InvalidExponent("norm exponent must be >= 1");
  if (std::isinf(r)) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
  }
  // Scale by the largest magnitude to avoid overflow/underflow in |x|^r.
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  if (r == 1.0) {
    Vector abs_values(v.size());
    std::transform(v.begin(), v.end(), abs_values.begin(), [](double x) { return std::abs(x); });
    return tree_sum(abs_values);
  }
  Vector powers(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) powers[i] = std::pow(std::abs(v[i]) / scale, r);
  return scale * std::pow(tree_sum(powers), 1.0 / r);
}

double conjugate_exponent(double r) {
  if (r < 1.0) throw InvalidExponent("exponent must be >= 1");
  if (r == 1.0) return kInfinity;
  if (std::isinf(r)) return 1.0;
  return r / (r - 1.0);
}

Vector subtract(std::span<const double> a, std::span<const double> b) {
  Vector out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

Vector add(std::span<const double> a, std::span<const double> b) {
  Vector out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Vector scaled(std::span<const double> a, double alpha) {
  Vector out(a.begin(), a.end());
  for (double& x : out) x *= alpha;
  return out;
}

Rng::Rng(std::uint64_t seed) {
  std::uint64_t s = seed;
  for (auto& word : state_) word = splitmix(s);
}

// xoshiro256**
std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

std::size_t Rng::index(std::size_t n) {
  return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
}

}  // namespace lipframe
