#include "lipframe/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lipframe/errors.hpp"

namespace lipframe {

const char* to_string(SymbolSequence::Class c) {
  switch (c) {
    case SymbolSequence::Class::ell_infty: return "ell_infty";
    case SymbolSequence::Class::c_zero: return "c_zero";
    case SymbolSequence::Class::ell_p: return "ell_p";
  }
  return "unknown";
}

SymbolSequence SymbolSequence::literal(Vector values) {
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidArgument("symbol entries must be finite");
  SymbolSequence s;
  s.overlay_ = std::move(values);
  return s;
}

SymbolSequence SymbolSequence::constant(double c) {
  if (!std::isfinite(c)) throw InvalidArgument("constant symbol must be finite");
  SymbolSequence s;
  s.family_ = Family::constant;
  s.param_ = c;
  return s;
}

SymbolSequence SymbolSequence::power(double exponent) {
  if (!(exponent > 0.0)) throw InvalidArgument("power symbol needs a positive exponent");
  SymbolSequence s;
  s.family_ = Family::power;
  s.param_ = exponent;
  return s;
}

SymbolSequence SymbolSequence::geometric(double r) {
  if (!(std::abs(r) < 1.0)) throw InvalidArgument("geometric symbol needs |r| < 1");
  SymbolSequence s;
  s.family_ = Family::geometric;
  s.param_ = r;
  return s;
}

double SymbolSequence::family_value(std::size_t i) const {
  const double n = static_cast<double>(i + 1);
  switch (family_) {
    case Family::zero: return 0.0;
    case Family::constant: return param_;
    case Family::power: return std::pow(n, -param_);
    case Family::geometric: return std::pow(param_, n);
  }
  return 0.0;
}

double SymbolSequence::operator[](std::size_t i) const {
  if (!in_window(i)) return 0.0;
  double v = family_vanishes() ? 0.0 : scale_ * family_value(i);
  if (i < overlay_.size()) v += overlay_[i];
  return v;
}

double SymbolSequence::tail_sup(std::size_t N) const {
  const std::size_t from = std::max(N, begin_);
  double m = 0.0;
  const std::size_t explicit_end = end_ ? std::min(*end_, overlay_.size()) : overlay_.size();
  for (std::size_t i = from; i < explicit_end; ++i) m = std::max(m, std::abs((*this)[i]));
  // |family| is nonincreasing in i, so past the overlay the sup sits at the
  // first remaining index.
  const std::size_t j0 = std::max(from, overlay_.size());
  if (!family_vanishes() && (!end_ || j0 < *end_)) m = std::max(m, std::abs(scale_ * family_value(j0)));
  return m;
}

std::optional<double> SymbolSequence::family_power_sum(std::size_t from, double p) const {
  if (family_vanishes()) return 0.0;
  if (end_) {
    if (from >= *end_) return 0.0;
    if (*end_ - from > 10'000'000) return std::nullopt;
    Vector powers;
    powers.reserve(*end_ - from);
    for (std::size_t i = from; i < *end_; ++i) powers.push_back(std::pow(std::abs(scale_ * family_value(i)), p));
    return tree_sum(powers);
  }
  const double sp = std::pow(std::abs(scale_), p);
  switch (family_) {
    case Family::zero: return 0.0;
    case Family::constant: return param_ == 0.0 ? std::optional<double>(0.0) : std::nullopt;
    case Family::geometric: {
      const double rp = std::pow(std::abs(param_), p);
      return sp * std::pow(rp, static_cast<double>(from + 1)) / (1.0 - rp);
    }
    case Family::power: {
      const double e = param_ * p;
      if (e <= 1.0) return std::nullopt;
      // zeta(e) minus the first `from` terms.
      Vector head(from);
      for (std::size_t n = 0; n < from; ++n) head[n] = std::pow(static_cast<double>(n + 1), -e);
      return sp * std::max(0.0, std::riemann_zeta(e) - tree_sum(head));
    }
  }
  return std::nullopt;
}

std::optional<double> SymbolSequence::p_norm(double p) const {
  if (!(p >= 1.0)) throw InvalidExponent("symbol p-norm needs p >= 1");
  if (std::isinf(p)) return sup_norm();
  const std::size_t explicit_end = end_ ? std::min(*end_, overlay_.size()) : overlay_.size();
  Vector powers;
  for (std::size_t i = begin_; i < explicit_end; ++i) powers.push_back(std::pow(std::abs((*this)[i]), p));
  const auto rest = family_power_sum(std::max(begin_, overlay_.size()), p);
  if (!rest) return std::nullopt;
  powers.push_back(*rest);
  return std::pow(tree_sum(powers), 1.0 / p);
}

std::optional<std::size_t> SymbolSequence::support_end() const {
  if (family_vanishes()) {
    std::size_t last = 0;
    for (std::size_t i = 0; i < overlay_.size(); ++i)
      if ((*this)[i] != 0.0) last = i + 1;
    return last;
  }
  if (family_ == Family::constant && param_ == 0.0) return overlay_.size();
  return end_;
}

SymbolSequence::Class SymbolSequence::symbol_class() const {
  if (support_end()) return Class::ell_p;
  switch (family_) {
    case Family::constant: return Class::ell_infty;
    case Family::power: return Class::c_zero;
    default: return Class::ell_p;
  }
}

bool SymbolSequence::is_identically_zero() const { return support_end() == std::size_t{0}; }

SymbolSequence SymbolSequence::perturbed(const Vector& delta) const {
  SymbolSequence s = *this;
  if (s.overlay_.size() < delta.size()) s.overlay_.resize(delta.size(), 0.0);
  for (std::size_t i = 0; i < delta.size(); ++i) {
    if (!std::isfinite(delta[i])) throw InvalidArgument("symbol perturbation must be finite");
    if (delta[i] != 0.0 && !in_window(i)) throw InvalidArgument("perturbation outside the symbol window");
    s.overlay_[i] += delta[i];
  }
  return s;
}

SymbolSequence SymbolSequence::truncated(std::size_t m) const {
  SymbolSequence s = *this;
  s.end_ = end_ ? std::min(*end_, m) : m;
  if (s.overlay_.size() > *s.end_) s.overlay_.resize(*s.end_);
  return s;
}

SymbolSequence SymbolSequence::tail_from(std::size_t m) const {
  SymbolSequence s = *this;
  s.begin_ = std::max(begin_, m);
  for (std::size_t i = 0; i < std::min(s.begin_, s.overlay_.size()); ++i) s.overlay_[i] = 0.0;
  return s;
}

SymbolSequence SymbolSequence::scaled(double alpha) const {
  SymbolSequence s = *this;
  s.scale_ *= alpha;
  for (double& v : s.overlay_) v *= alpha;
  return s;
}

std::optional<SymbolSequence> sum(const SymbolSequence& a, const SymbolSequence& b) {
  if (a.begin_ != b.begin_ || a.end_ != b.end_) {
    // Differing windows are fine when both sides are finitely supported.
    if (!a.family_vanishes() || !b.family_vanishes()) return std::nullopt;
  }
  SymbolSequence s;
  if (a.family_vanishes()) {
    s = b;
    s.overlay_.clear();
  } else if (b.family_vanishes()) {
    s = a;
    s.overlay_.clear();
  } else {
    if (a.family_ != b.family_ || a.param_ != b.param_) return std::nullopt;
    s = a;
    s.overlay_.clear();
    s.scale_ = a.scale_ + b.scale_;
  }
  if (a.family_vanishes() && b.family_vanishes()) {
    // Materialise both (windows applied) as plain literals.
    s = SymbolSequence();
    const std::size_t n = std::max(a.overlay_.size(), b.overlay_.size());
    s.overlay_.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) s.overlay_[i] = a[i] + b[i];
    return s;
  }
  const std::size_t n = std::max(a.overlay_.size(), b.overlay_.size());
  s.overlay_.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < a.overlay_.size() && a.in_window(i)) s.overlay_[i] += a.overlay_[i];
    if (i < b.overlay_.size() && b.in_window(i)) s.overlay_[i] += b.overlay_[i];
  }
  return s;
}

std::optional<SymbolSequence> difference(const SymbolSequence& a, const SymbolSequence& b) {
  return sum(a, b.scaled(-1.0));
}

std::string SymbolSequence::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::zero: os << "zero"; break;
    case Family::constant: os << "constant(" << param_ << ")"; break;
    case Family::power: os << "power(" << param_ << ")"; break;
    case Family::geometric: os << "geometric(" << param_ << ")"; break;
  }
  if (scale_ != 1.0) os << "*" << scale_;
  if (!overlay_.empty()) os << "+overlay(" << overlay_.size() << ")";
  if (begin_ != 0 || end_) {
    os << "[" << begin_ << ",";
    if (end_) os << *end_; else os << "inf";
    os << ")";
  }
  return os.str();
}

}  // namespace lipframe
