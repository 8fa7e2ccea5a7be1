#include "config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace lipframe::cli {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

namespace {

double to_number(const std::string& token, const std::string& context) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    throw ConfigError(context + ": expected a number, got '" + token + "'");
  }
  if (used != token.size()) throw ConfigError(context + ": trailing characters in '" + token + "'");
  return v;
}

std::size_t to_index(double v, const std::string& context) {
  if (v < 0 || v != std::floor(v)) throw ConfigError(context + ": expected a nonnegative integer");
  return static_cast<std::size_t>(v);
}

// First word and the remainder.
std::pair<std::string, std::string> head(const std::string& text) {
  const std::string s = trim(text);
  const auto sp = s.find_first_of(" \t");
  if (sp == std::string::npos) return {s, ""};
  return {s.substr(0, sp), trim(s.substr(sp + 1))};
}

Vector expect_count(const std::string& what, const std::string& params, std::size_t n) {
  Vector v = parse_numbers(params);
  if (v.size() != n)
    throw ConfigError(what + " expects " + std::to_string(n) + " parameter(s), got " + std::to_string(v.size()));
  return v;
}

}  // namespace

Vector parse_numbers(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  Vector out;
  std::string token;
  while (in >> token) out.push_back(to_number(token, "number list"));
  return out;
}

Config Config::parse(const std::string& text, std::string origin) {
  Config c;
  c.text_ = text;
  c.origin_ = std::move(origin);
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(c.origin_ + ":" + std::to_string(lineno) + ": expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw ConfigError(c.origin_ + ":" + std::to_string(lineno) + ": empty key");
    c.values_[key] = trim(line.substr(eq + 1));
  }
  return c;
}

Config Config::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Config c = parse(buf.str(), path);
  c.directory_ = std::filesystem::path(path).parent_path().string();
  return c;
}

std::optional<std::string> Config::get(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::string Config::require(const std::string& key) const {
  const auto v = get(key);
  if (!v) throw ConfigError(origin_ + ": missing required key '" + key + "'");
  return *v;
}

double Config::number(const std::string& key) const { return to_number(require(key), origin_ + ": " + key); }

std::optional<double> Config::number_or(const std::string& key) const {
  if (!has(key)) return std::nullopt;
  return number(key);
}

Point parse_point(const MetricSpace& space, const std::string& text) {
  const std::string s = trim(text);
  Point p = 0.0;
  switch (space.kind()) {
    case MetricSpace::Kind::finite: {
      for (const auto& candidate : space.points()) {
        if (candidate.is_label() && candidate.name() == s) return candidate;
        if (candidate.is_scalar() && to_number(s, "point") == candidate.scalar()) return candidate;
      }
      throw ConfigError("point '" + s + "' is not a member of the finite space");
    }
    case MetricSpace::Kind::interval: p = to_number(s, "point"); break;
    case MetricSpace::Kind::euclidean: {
      Vector v = parse_numbers(s);
      if (v.size() != space.dimension())
        throw ConfigError("point '" + s + "' must have " + std::to_string(space.dimension()) + " coordinates");
      p = std::move(v);
      break;
    }
  }
  if (!space.contains(p)) throw ConfigError("point '" + s + "' lies outside " + space.describe());
  return p;
}

MetricSpace build_space(const std::string& text, const std::string& directory) {
  const auto [kind, params] = head(text);
  if (kind == "interval") {
    const Vector v = expect_count("interval", params, 2);
    return make_interval_space(v[0], v[1]);
  }
  if (kind == "euclidean") {
    const Vector v = expect_count("euclidean", params, 2);
    return make_euclidean_space(to_index(v[0], "euclidean dimension"), v[1]);
  }
  if (kind == "two_point") {
    const Vector v = expect_count("two_point", params, 2);
    return two_point_space(v[0], v[1]);
  }
  if (kind == "finite") {
    if (params.empty()) throw ConfigError("finite space needs a file path");
    std::filesystem::path path(params);
    if (path.is_relative() && !directory.empty()) path = std::filesystem::path(directory) / path;
    return load_finite_space_file(path.string());
  }
  throw ConfigError("unknown space '" + kind + "' (expected interval, euclidean, two_point or finite)");
}

namespace {

LipschitzMap build_term(const std::string& text) {
  const auto [kind, params] = head(text);
  if (kind == "identity") return identity_map();
  if (kind == "zero") return constant_map(0.0);
  if (kind == "square") return square_map();
  if (kind == "linear") return linear_map(expect_count("linear", params, 1)[0]);
  if (kind == "constant") return constant_map(expect_count("constant", params, 1)[0]);
  if (kind == "sine") {
    const Vector v = expect_count("sine", params, 2);
    return sine_map(v[0], v[1]);
  }
  if (kind == "kink") {
    const Vector v = expect_count("kink", params, 2);
    return kink_map(v[0], v[1]);
  }
  throw ConfigError("unknown functional '" + kind + "'");
}

}  // namespace

FrameSetup build_named_frame(const std::string& name, const std::string& params) {
  if (name == "log_series") {
    const Vector v = parse_numbers(params);
    if (v.size() != 2 && v.size() != 3) throw ConfigError("log_series expects: a b [index_cap]");
    const std::size_t cap = v.size() == 3 ? to_index(v[2], "index_cap") : kDefaultIndexCap;
    return {log_series_frame(v[0], v[1], cap), make_interval_space(v[0], v[1])};
  }
  if (name == "cyclic") {
    const Vector v = expect_count("cyclic", params, 3);
    const std::size_t n = to_index(v[0], "cyclic n");
    return {cyclic_shift_frame(n, to_index(v[1], "cyclic m"), v[2]), make_euclidean_space(n, v[2])};
  }
  if (name == "two_point") {
    const Vector v = expect_count("two_point", params, 2);
    return {two_point_frame(v[0], v[1]), two_point_space(v[0], v[1])};
  }
  throw ConfigError("unknown frame '" + name + "' (expected log_series, cyclic, two_point or list)");
}

FrameSetup build_frame(const Config& config) {
  const auto [name, params] = head(config.require("frame"));
  std::optional<MetricSpace> space;
  if (const auto s = config.get("space")) space = build_space(*s, config.directory());

  FunctionalSequence frame = [&, name = name, params = params] {
    if (name != "list") return build_named_frame(name, params).frame;
    std::vector<LipschitzMap> terms;
    for (const auto& t : split(params, ';')) terms.push_back(build_term(t));
    if (terms.empty()) throw ConfigError("frame list is empty");
    return FunctionalSequence::finite(std::move(terms)).named("list");
  }();
  if (!space) {
    if (name == "list") throw ConfigError("a 'list' frame needs an explicit 'space'");
    space = build_named_frame(name, params).space;
  }
  if (const auto cap = config.number_or("index_cap")) frame = frame.with_index_cap(to_index(*cap, "index_cap"));
  return {std::move(frame), std::move(*space)};
}

SymbolSequence build_symbol(const std::string& text, const std::optional<SymbolSequence>& base) {
  const auto [kind, params] = head(text);
  if (kind == "one_over_n") return SymbolSequence::one_over_n();
  if (kind == "zero") return SymbolSequence::zero();
  if (kind == "power") return SymbolSequence::power(expect_count("power", params, 1)[0]);
  if (kind == "geometric") return SymbolSequence::geometric(expect_count("geometric", params, 1)[0]);
  if (kind == "constant") return SymbolSequence::constant(expect_count("constant", params, 1)[0]);
  if (kind == "list") return SymbolSequence::literal(parse_numbers(params));
  if (kind == "perturb") {
    if (!base) throw ConfigError("'perturb' is only valid for a second symbol");
    return base->perturbed(parse_numbers(params));
  }
  throw ConfigError("unknown symbol '" + kind + "'");
}

std::map<std::size_t, Vector> parse_vector_delta(const std::string& text) {
  std::map<std::size_t, Vector> delta;
  for (const auto& entry : split(text, ';')) {
    const auto colon = entry.find(':');
    if (colon == std::string::npos) throw ConfigError("vector_delta entries look like 'index: v v v'");
    const std::size_t n = to_index(to_number(trim(entry.substr(0, colon)), "vector_delta index"), "vector_delta");
    delta[n] = parse_numbers(entry.substr(colon + 1));
  }
  if (delta.empty()) throw ConfigError("vector_delta is empty");
  return delta;
}

namespace {

Point default_basepoint(const MetricSpace& space) {
  switch (space.kind()) {
    case MetricSpace::Kind::finite: return space.points().front();
    case MetricSpace::Kind::interval: return space.contains(0.0) ? 0.0 : space.lower();
    case MetricSpace::Kind::euclidean: return Vector(space.dimension(), 0.0);
  }
  return 0.0;
}

VectorSequence build_vectors(const Config& config, const FunctionalSequence& frame, double q) {
  const auto [kind, params] = head(config.get("vectors").value_or("standard_basis"));
  std::optional<NormedSpace> space;
  if (const auto vs = config.get("vector_space")) {
    const auto [vk, vp] = head(*vs);
    if (vk == "sequences") {
      space = NormedSpace::sequences(expect_count("sequences", vp, 1)[0]);
    } else if (vk == "finite") {
      const Vector v = expect_count("finite", vp, 2);
      space = NormedSpace::finite(to_index(v[0], "vector dimension"), v[1]);
    } else {
      throw ConfigError("unknown vector_space '" + vk + "'");
    }
  }
  if (kind == "standard_basis") {
    std::optional<std::size_t> count;
    if (!params.empty()) count = to_index(expect_count("standard_basis", params, 1)[0], "standard_basis count");
    if (!space) {
      if (const auto len = count ? count : frame.length())
        space = NormedSpace::finite(*len, q);
      else
        space = NormedSpace::sequences(q);
    }
    return VectorSequence::standard_basis(*space, count);
  }
  if (kind == "list") {
    std::vector<Vector> terms;
    std::size_t dim = 0;
    for (const auto& t : split(params, ';')) {
      terms.push_back(parse_numbers(t));
      dim = std::max(dim, terms.back().size());
    }
    if (!space) space = NormedSpace::finite(dim, q);
    return VectorSequence::from_list(*space, std::move(terms));
  }
  throw ConfigError("unknown vectors '" + kind + "' (expected standard_basis or list)");
}

}  // namespace

OperatorSetup build_operator(const Config& config) {
  FrameSetup setup = build_frame(config);
  const double p = config.number_or("p").value_or(2.0);
  if (!(p > 1.0)) throw InvalidExponent("multiplier exponent must satisfy 1 < p < infinity");
  const double q = conjugate_exponent(p);
  const Point z = config.has("basepoint") ? parse_point(setup.space, config.require("basepoint"))
                                          : default_basepoint(setup.space);

  std::optional<double> b = config.number_or("b");
  if (!b) {
    if (const auto known = setup.frame.known_bounds(p)) b = known->b;
  }
  if (!b) throw ConfigError("missing 'b' and the frame has no known Bessel bound for this p");

  VectorSequence vectors = build_vectors(config, setup.frame, q);
  if (const auto a = config.number_or("riesz_a"))
    vectors = vectors.with_declared_riesz_bounds(RieszBounds{*a, config.number_or("riesz_b").value_or(*a)});

  MultiplierOperator op = shifted_multiplier(build_symbol(config.require("symbol")), setup.frame, std::move(vectors),
                                             setup.space, z, p, *b, config.number("d"));
  return {std::move(op), std::move(setup.frame)};
}

}  // namespace lipframe::cli
