#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "config.hpp"
#include "report.hpp"

namespace lipframe::cli {

namespace {

struct Options {
  std::string config;
  std::size_t pairs = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  std::string strategy = "uniform";
  std::string suite = "all";
  std::string out;
  std::string point;
  std::string csv;
  std::string metric;
  std::string frame_name;
  std::vector<std::string> frame_params;
  double p = 2.0;
};

constexpr std::size_t kDualSamples = 200;
constexpr std::size_t kDualDimensionCap = 32;
constexpr std::size_t kMaxListedViolations = 10;

bool truncation_failure(const std::exception& e) {
  return dynamic_cast<const ToleranceUnreachable*>(&e) || dynamic_cast<const NoTailBound*>(&e);
}

Record inconclusive_record(const std::string& name, const std::exception& e) {
  return Record(name, Status::inconclusive).detail("reason", e.what());
}

void record_sample(Report& report, const Options& opt, SamplingStrategy strategy) {
  report.input("pairs", opt.pairs);
  report.input("seed", opt.seed);
  report.input("tolerance", opt.tol);
  report.input("strategy", to_string(strategy));
}

std::string csv_point(const Point& p) {
  std::ostringstream os;
  os.precision(17);
  if (p.is_scalar()) {
    os << p.scalar();
  } else if (p.is_vector()) {
    for (std::size_t i = 0; i < p.vector().size(); ++i) os << (i ? ";" : "") << p.vector()[i];
  } else {
    os << p.name();
  }
  return os.str();
}

class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path) {
    if (path.empty()) return;
    file_.open(path);
    if (!file_) throw ConfigError("cannot open CSV output '" + path + "'");
    file_.precision(17);
  }
  bool enabled() const { return file_.is_open(); }
  std::ofstream& stream() { return file_; }

 private:
  std::ofstream file_;
};

// ---------------------------------------------------------------------------
// verify-frame

Report verify_frame(const Options& opt) {
  const Config config = Config::load(opt.config);
  Report report("verify-frame", sha256_hex(config.text()));
  const SamplingStrategy strategy = parse_strategy(opt.strategy);
  record_sample(report, opt, strategy);

  const FrameSetup setup = report.timed("setup", [&] { return build_frame(config); });
  const double p = config.number_or("p").value_or(2.0);
  report.input("p", p);
  report.input("frame", setup.frame.name());
  report.input("space", setup.space.describe());

  const PairSample pairs =
      report.timed("sample", [&] { return sample_pairs(setup.space, strategy, opt.pairs, opt.seed); });

  try {
    const FrameBoundEstimate est =
        report.timed("estimate", [&] { return estimate_frame_bounds(setup.frame, setup.space, p, pairs, opt.tol); });
    Record r("frame_bounds", Status::pass);
    r.quantity("a_est", Role::estimate_upper, est.a_est)
        .quantity("b_est", Role::estimate_lower, est.b_est)
        .quantity("max_certificate", Role::certificate, est.max_certificate)
        .quantity("truncation_index", Role::parameter, static_cast<double>(est.truncation_index))
        .detail("pairs_used", est.pairs_used)
        .detail("pairs_skipped", est.pairs_skipped);
    if (est.a_witness) r.detail("a_witness", to_json(*est.a_witness));
    if (est.b_witness) r.detail("b_witness", to_json(*est.b_witness));
    report.add(std::move(r));

    const auto known = setup.frame.known_bounds(p);
    if (known) {
      Record k("known_bounds", Status::pass);
      if (known->a) k.quantity("a", Role::exact, *known->a);
      k.quantity("b", Role::exact, known->b);
      const double slack = kDeclaredBoundRelTolerance;
      const bool upper_ok = est.b_est <= known->b * (1 + slack) + opt.tol;
      const bool lower_ok = !known->a || est.a_est >= *known->a * (1 - slack) - opt.tol;
      if (!upper_ok || !lower_ok) k.status(Status::violation);
      report.add(std::move(k));
    }

    const std::optional<double> claimed =
        config.number_or("claimed_b") ? config.number_or("claimed_b")
                                      : (known ? std::optional<double>(known->b) : std::nullopt);
    if (claimed) {
      const BesselReport bessel = report.timed(
          "bessel", [&] { return verify_bessel(setup.frame, setup.space, p, *claimed, pairs, opt.tol); });
      Record b("bessel", bessel.consistent() ? Status::pass : Status::violation);
      b.quantity("claimed_b", Role::bound_upper, *claimed)
          .detail("pairs_checked", bessel.pairs_checked)
          .detail("violations", bessel.violations.size());
      Json listed = Json::array();
      for (std::size_t i = 0; i < std::min(bessel.violations.size(), kMaxListedViolations); ++i)
        listed.push_back({{"pair", to_json(bessel.violations[i].pair)}, {"ratio", bessel.violations[i].ratio}});
      if (!listed.empty()) b.detail("first_violations", listed);
      report.add(std::move(b));
    }
  } catch (const Error& e) {
    if (!truncation_failure(e)) throw;
    report.add(inconclusive_record("frame_bounds", e));
  }

  CsvWriter csv(opt.csv);
  if (csv.enabled()) {
    csv.stream() << "x,y,distance,ratio,certificate\n";
    for (const auto& pair : pairs.pairs) {
      const double d = setup.space.distance(pair.first, pair.second);
      const PowerSum s = power_sum(setup.frame, pair.first, pair.second, p, opt.tol * d);
      csv.stream() << '"' << csv_point(pair.first) << "\",\"" << csv_point(pair.second) << "\"," << d << ','
                   << s.value / d << ',' << s.certificate << '\n';
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// apply

Report apply_command(const Options& opt) {
  const Config config = Config::load(opt.config);
  Report report("apply", sha256_hex(config.text()));
  report.input("tolerance", opt.tol);
  report.input("point", opt.point);
  const OperatorSetup setup = report.timed("setup", [&] { return build_operator(config); });
  const Point x = parse_point(setup.op.space().base(), opt.point);
  try {
    const Evaluation ev = report.timed("apply", [&] { return apply(setup.op, x, opt.tol); });
    Record r("apply", Status::pass);
    r.quantity("M(x)", Role::value, ev.value)
        .quantity("remainder_bound", Role::certificate, ev.certificate.remainder_bound)
        .quantity("truncation_index", Role::parameter, static_cast<double>(ev.certificate.truncation_index))
        .detail("formula", to_string(ev.certificate.formula))
        .detail("point", to_json(x));
    report.add(std::move(r));
  } catch (const Error& e) {
    if (!truncation_failure(e)) throw;
    report.add(inconclusive_record("apply", e));
  }
  return report;
}

// ---------------------------------------------------------------------------
// check-theorems

Record norm_check(const MultiplierOperator& op, const PairSample& pairs, double tol, const std::string& name) {
  Record r(name);
  try {
    const OperatorNormEstimate e = empirical_lip_norm(op, pairs, tol);
    r.status(Status::pass)
        .quantity("bound", Role::bound_upper, e.upper_bound)
        .quantity("empirical", Role::estimate_lower, e.estimate.lower_bound)
        .quantity("quotient_error", Role::certificate, e.quotient_error)
        .detail("pairs_used", e.estimate.pairs_used);
    if (e.estimate.witness) r.detail("witness", to_json(*e.estimate.witness));
  } catch (const BoundViolated& e) {
    r.status(Status::violation)
        .quantity("bound", Role::bound_upper, e.declared())
        .quantity("empirical", Role::estimate_lower, e.observed())
        .detail("message", e.what());
  } catch (const Error& e) {
    if (!truncation_failure(e)) throw;
    return inconclusive_record(name, e);
  }
  return r;
}

std::vector<Record> dual_bessel_checks(const MultiplierOperator& op, std::uint64_t seed) {
  const NormedSpace& X = op.codomain();
  std::size_t dim = X.dimension().value_or(kDualDimensionCap);
  if (const auto len = op.vectors().length()) dim = std::min(dim, std::max<std::size_t>(*len, 1));
  dim = std::min(dim, kDualDimensionCap);
  std::vector<Record> out;
  {
    const auto samples = sample_dual_functionals(X, dim, kDualSamples, seed, false);
    const DualBesselEstimate e = estimate_dual_bessel_bound(op.vectors(), op.q(), samples, dim);
    const bool ok = e.d_est <= op.d() * (1 + kDeclaredBoundRelTolerance);
    out.push_back(Record("dual_bessel_linear", ok ? Status::pass : Status::violation)
                      .quantity("d", Role::bound_upper, op.d())
                      .quantity("d_est", Role::estimate_lower, e.d_est)
                      .detail("terms_used", e.terms_used));
  }
  {
    const auto samples = sample_dual_functionals(X, dim, kDualSamples, seed, true);
    const DualBesselEstimate e = estimate_dual_bessel_bound(op.vectors(), op.q(), samples, dim);
    out.push_back(Record("dual_bessel_lip0", Status::info)
                      .quantity("d", Role::parameter, op.d())
                      .quantity("d_est", Role::estimate_lower, e.d_est)
                      .detail("terms_used", e.terms_used)
                      .detail("functionals", "linear and distance functionals"));
  }
  return out;
}

std::vector<Record> compactness_checks(const Config& config, const MultiplierOperator& op, const PairSample& pairs,
                                       const Options& opt, SamplingStrategy strategy) {
  std::vector<Record> out;
  Vector ms = parse_numbers(config.get("m_values").value_or("1 5 10 50"));
  for (double mv : ms) {
    if (mv < 0 || mv != std::floor(mv)) throw ConfigError("m_values must be nonnegative integers");
    const auto m = static_cast<std::size_t>(mv);
    Record r = norm_check(tail_operator(op, m), pairs, opt.tol, "compactness_m" + std::to_string(m));
    r.quantity("tail_gap", Role::bound_upper, compactness_tail_gap(op, m)).detail("m", m);
    out.push_back(std::move(r));
  }

  const double eps = config.number_or("epsilon").value_or(0.1);
  const std::size_t small_count = std::max<std::size_t>(opt.pairs / 10, 1);
  const PairSample small = sample_pairs(op.space().base(), strategy, small_count, opt.seed);
  try {
    const auto net_small = covering_number_estimate(difference_quotient_sample(op, small, opt.tol), op.codomain(), eps);
    const auto net_large = covering_number_estimate(difference_quotient_sample(op, pairs, opt.tol), op.codomain(), eps);
    out.push_back(Record("covering_numbers", Status::info)
                      .quantity("epsilon", Role::parameter, eps)
                      .quantity("net_size_small", Role::estimate_upper, static_cast<double>(net_small))
                      .quantity("net_size_large", Role::estimate_upper, static_cast<double>(net_large))
                      .detail("pairs_small", small.size())
                      .detail("pairs_large", pairs.size())
                      .detail("symbol_class", to_string(op.symbol().symbol_class())));
  } catch (const Error& e) {
    if (!truncation_failure(e)) throw;
    out.push_back(inconclusive_record("covering_numbers", e));
  }
  return out;
}

Record injectivity_check(const Config& config, const MultiplierOperator& op, double tol) {
  const SymbolSequence mu = build_symbol(config.require("symbol2"), op.symbol());
  std::vector<Point> candidates;
  for (const auto& c : split(config.require("candidates"), ';')) candidates.push_back(parse_point(op.space().base(), c));
  try {
    const auto w = injectivity_separation(op, mu, candidates, tol);
    if (!w)
      return Record("injectivity", Status::inconclusive)
          .detail("reason", "no candidate separates the two multipliers")
          .detail("candidates", candidates.size());
    return Record("injectivity", Status::pass)
        .quantity("separation", Role::estimate_lower, w->separation)
        .quantity("threshold", Role::bound_upper, w->threshold)
        .detail("index", w->index)
        .detail("witness", to_json(w->point));
  } catch (const Error& e) {
    if (!truncation_failure(e)) throw;
    return inconclusive_record("injectivity", e);
  }
}

Record perturbation_record(const std::string& name, const PerturbationReport& p) {
  Record r(name, p.violation ? Status::violation : Status::pass);
  r.quantity("bound", Role::bound_upper, p.bound)
      .quantity("empirical", Role::estimate_lower, p.empirical)
      .quantity("quotient_error", Role::certificate, p.quotient_error);
  if (p.witness) r.detail("witness", to_json(*p.witness));
  return r;
}

Record guarded(const std::string& name, const std::function<Record()>& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (!truncation_failure(e)) throw;
    return inconclusive_record(name, e);
  }
}

Report check_theorems(const Options& opt) {
  static const std::vector<std::string> kSuites = {"norm", "compactness", "injectivity", "continuity_symbol",
                                                   "continuity_vector"};
  static const std::map<std::string, std::vector<std::string>> kRequired = {
      {"injectivity", {"symbol2", "candidates"}},
      {"continuity_symbol", {"symbol2"}},
      {"continuity_vector", {"vector_delta"}}};
  if (opt.suite != "all" && std::find(kSuites.begin(), kSuites.end(), opt.suite) == kSuites.end())
    throw ConfigError("unknown suite '" + opt.suite + "'");

  const Config config = Config::load(opt.config);
  Report report("check-theorems", sha256_hex(config.text()));
  const SamplingStrategy strategy = parse_strategy(opt.strategy);
  record_sample(report, opt, strategy);
  report.input("suite", opt.suite);

  const OperatorSetup setup = report.timed("setup", [&] { return build_operator(config); });
  const MultiplierOperator& op = setup.op;
  report.input("p", op.p());
  report.input("q", op.q());
  report.input("b", op.b());
  report.input("d", op.d());
  report.input("symbol", op.symbol().describe());
  report.input("vectors", op.vectors().describe());
  report.annotate(
      "b and d are taken as declared. The operator norm bound uses the dual-side Bessel constant over linear "
      "functionals; the constant over all pointed Lipschitz functionals can be larger and is reported separately "
      "for information.");

  const PairSample pairs =
      report.timed("sample", [&] { return sample_pairs(op.space().base(), strategy, opt.pairs, opt.seed); });

  for (const auto& suite : kSuites) {
    if (opt.suite != "all" && opt.suite != suite) continue;
    if (const auto req = kRequired.find(suite); req != kRequired.end()) {
      std::vector<std::string> missing;
      for (const auto& key : req->second)
        if (!config.has(key)) missing.push_back(key);
      if (!missing.empty()) {
        if (opt.suite == suite) throw ConfigError("suite '" + suite + "' needs config key '" + missing.front() + "'");
        report.add(Record(suite, Status::skipped).detail("missing", missing));
        continue;
      }
    }
    report.timed(suite, [&] {
      if (suite == "norm") {
        report.add(norm_check(op, pairs, opt.tol, "norm"));
        for (auto& r : dual_bessel_checks(op, opt.seed)) report.add(std::move(r));
      } else if (suite == "compactness") {
        for (auto& r : compactness_checks(config, op, pairs, opt, strategy)) report.add(std::move(r));
      } else if (suite == "injectivity") {
        report.add(injectivity_check(config, op, opt.tol));
      } else if (suite == "continuity_symbol") {
        const SymbolSequence lambda2 = build_symbol(config.require("symbol2"), op.symbol());
        report.add(guarded("continuity_symbol", [&] {
          return perturbation_record("continuity_symbol", symbol_perturbation_check(op, lambda2, pairs, opt.tol));
        }));
      } else if (suite == "continuity_vector") {
        const VectorSequence tau2 = op.vectors().perturbed(parse_vector_delta(config.require("vector_delta")));
        report.add(guarded("continuity_vector", [&] {
          return perturbation_record("continuity_vector", vector_perturbation_check(op, tau2, pairs, opt.tol));
        }));
      }
      return 0;
    });
  }

  CsvWriter csv(opt.csv);
  if (csv.enabled()) {
    csv.stream() << "x,y,distance,quotient,certificate\n";
    const MetricSpace& space = op.space().base();
    for (const auto& pair : pairs.pairs) {
      const double d = space.distance(pair.first, pair.second);
      const Evaluation ev = apply_difference(op, pair.first, pair.second, opt.tol * d / 10);
      csv.stream() << '"' << csv_point(pair.first) << "\",\"" << csv_point(pair.second) << "\"," << d << ','
                   << op.codomain().norm(ev.value) / d << ',' << ev.certificate.remainder_bound / d << '\n';
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// validate-metric

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Record axiom_record(const AxiomViolation& v) {
  Json witness = Json::array();
  for (auto i : v.witness()) witness.push_back(i);
  return Record("metric_axioms", Status::violation)
      .quantity("excess", Role::estimate_lower, v.excess())
      .detail("axiom", to_string(v.kind()))
      .detail("witness_indices", witness)
      .detail("message", v.what());
}

Report validate_metric(const Options& opt) {
  if (opt.metric.empty() == opt.config.empty())
    throw ConfigError("validate-metric needs exactly one of --metric or --config");
  if (!opt.metric.empty()) {
    const std::string text = read_file(opt.metric);
    Report report("validate-metric", sha256_hex(text));
    report.input("metric", opt.metric);
    std::istringstream in(text);
    try {
      const MetricSpace space = report.timed("validate", [&] { return load_finite_space(in); });
      report.add(Record("metric_axioms", Status::pass)
                     .quantity("points", Role::exact, static_cast<double>(space.points().size()))
                     .detail("checked", "exhaustive"));
    } catch (const AxiomViolation& v) {
      report.add(axiom_record(v));
    }
    return report;
  }

  const Config config = Config::load(opt.config);
  Report report("validate-metric", sha256_hex(config.text()));
  record_sample(report, opt, SamplingStrategy::uniform_random);
  try {
    const MetricSpace space = report.timed("setup", [&] {
      return config.has("space") ? build_space(config.require("space"), config.directory()) : build_frame(config).space;
    });
    report.input("space", space.describe());
    const auto violation = report.timed("validate", [&] { return check_axioms_sampled(space, opt.pairs, opt.seed); });
    if (violation)
      report.add(axiom_record(*violation));
    else
      report.add(Record("metric_axioms", Status::pass)
                     .detail("checked", space.is_finite() ? "exhaustive" : "sampled triples")
                     .detail("triples", space.is_finite() ? 0 : opt.pairs));
  } catch (const AxiomViolation& v) {
    report.add(axiom_record(v));
  }
  return report;
}

// ---------------------------------------------------------------------------
// frame

Report frame_command(const Options& opt) {
  std::string params;
  for (const auto& s : opt.frame_params) params += (params.empty() ? "" : " ") + s;
  std::ostringstream descriptor;
  descriptor.precision(17);
  descriptor << opt.frame_name << ' ' << params << " p=" << opt.p;
  Report report("frame", sha256_hex(descriptor.str()));
  report.input("name", opt.frame_name);
  report.input("params", params);
  report.input("p", opt.p);
  const FrameSetup setup = build_named_frame(opt.frame_name, params);
  Record r("frame", Status::pass);
  r.detail("space", setup.space.describe())
      .detail("pointed", setup.frame.pointed())
      .detail("index_cap", setup.frame.index_cap());
  if (const auto len = setup.frame.length())
    r.detail("length", *len);
  else
    r.detail("length", "infinite");
  if (const auto known = setup.frame.known_bounds(opt.p)) {
    if (known->a) r.quantity("a", Role::exact, *known->a);
    r.quantity("b", Role::exact, known->b);
  }
  report.add(std::move(r));
  return report;
}

void emit(const Report& report, const Options& opt, std::ostream& out) {
  const std::string text = report.to_json().dump(2) + "\n";
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary);
  if (!file) throw ConfigError("cannot open output '" + opt.out + "'");
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Lipschitz frames and multipliers: estimates, certificates and theorem checks", "lipframe"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub, bool sampling) {
    sub->add_option("--config", opt.config, "Configuration file");
    sub->add_option("--tol", opt.tol, "Truncation tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--out", opt.out, "Write the JSON report here instead of standard output");
    if (sampling) {
      sub->add_option("--pairs", opt.pairs, "Number of sampled point pairs")->check(CLI::PositiveNumber);
      sub->add_option("--seed", opt.seed, "Sampling seed");
      sub->add_option("--strategy", opt.strategy, "uniform, local or exhaustive");
    }
  };

  auto* verify = app.add_subcommand("verify-frame", "Estimate frame bounds and check a Bessel bound");
  add_common(verify, true);
  verify->add_option("--csv", opt.csv, "Write per-pair ratios as CSV");
  auto* apply_cmd = app.add_subcommand("apply", "Evaluate a multiplier at a point with a truncation certificate");
  add_common(apply_cmd, false);
  apply_cmd->add_option("--point", opt.point, "Point in the space's domain")->required();
  auto* check = app.add_subcommand("check-theorems", "Check multiplier bounds against sampled estimates");
  add_common(check, true);
  check->add_option("--suite", opt.suite, "norm, compactness, injectivity, continuity_symbol, continuity_vector, all");
  check->add_option("--csv", opt.csv, "Write per-pair difference quotients as CSV");
  auto* validate = app.add_subcommand("validate-metric", "Check metric axioms of a space");
  add_common(validate, true);
  validate->add_option("--metric", opt.metric, "Finite metric file: N, N labels, N rows of distances");
  auto* frame = app.add_subcommand("frame", "Describe a built-in frame");
  frame->add_option("name", opt.frame_name, "log_series, cyclic or two_point")->required();
  frame->add_option("params", opt.frame_params, "Constructor parameters");
  frame->add_option("--p", opt.p, "Exponent for the reported bounds");
  frame->add_option("--out", opt.out, "Write the JSON report here instead of standard output");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  auto needs_config = [&] {
    if (opt.config.empty()) throw ConfigError("--config is required");
  };

  try {
    std::optional<Report> report;
    if (*verify) {
      needs_config();
      report = verify_frame(opt);
    } else if (*apply_cmd) {
      needs_config();
      report = apply_command(opt);
    } else if (*check) {
      needs_config();
      report = check_theorems(opt);
    } else if (*validate) {
      report = validate_metric(opt);
    } else if (*frame) {
      report = frame_command(opt);
    }
    emit(*report, opt, out);
    return report->exit_code();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace lipframe::cli
