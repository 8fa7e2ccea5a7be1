#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lipframe/lipframe.hpp"

namespace lipframe::cli {

/// Malformed or incomplete configuration; maps to exit code 1.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// `key = value` lines; `#` starts a comment. Later keys override earlier ones.
class Config {
 public:
  static Config parse(const std::string& text, std::string origin = "<string>");
  static Config load(const std::string& path);

  const std::string& text() const { return text_; }
  const std::string& directory() const { return directory_; }

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> get(const std::string& key) const;
  std::string require(const std::string& key) const;
  double number(const std::string& key) const;
  std::optional<double> number_or(const std::string& key) const;

 private:
  std::map<std::string, std::string> values_;
  std::string text_;
  std::string origin_;
  std::string directory_;
};

/// Whitespace/comma separated reals.
Vector parse_numbers(const std::string& text);
std::vector<std::string> split(const std::string& text, char sep);
std::string trim(const std::string& s);

/// `interval a b`, `euclidean n r`, `two_point x y` or `finite PATH` (relative
/// paths resolve against `directory`).
MetricSpace build_space(const std::string& text, const std::string& directory = "");

Point parse_point(const MetricSpace& space, const std::string& text);

/// A frame together with the space it lives on.
struct FrameSetup {
  FunctionalSequence frame;
  MetricSpace space;
};

FrameSetup build_frame(const Config& config);
/// Build a frame from a name and its parameters, e.g. ("cyclic", "3 5 2").
FrameSetup build_named_frame(const std::string& name, const std::string& params);

SymbolSequence build_symbol(const std::string& text, const std::optional<SymbolSequence>& base = std::nullopt);

struct OperatorSetup {
  MultiplierOperator op;
  FunctionalSequence frame;  ///< before re-pointing at the basepoint
};

/// Functionals are re-pointed at the basepoint (g_n = f_n - f_n(z)), which
/// leaves every difference and frame bound unchanged.
OperatorSetup build_operator(const Config& config);

/// Parses `index: v v v; index: v` into a finitely supported perturbation.
std::map<std::size_t, Vector> parse_vector_delta(const std::string& text);

}  // namespace lipframe::cli
