#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

const fs::path kConfigs = LIPFRAME_CONFIG_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
  Json json() const { return Json::parse(out); }
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = lipframe::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string config(const std::string& name) { return (kConfigs / name).string(); }

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / ("lipframe_cli_test_" + name);
  std::ofstream(p) << text;
  return p;
}

std::optional<Json> find_result(const Json& report, const std::string& name) {
  for (const auto& r : report["results"])
    if (r["name"] == name) return r;
  return std::nullopt;
}

double quantity(const Json& record, const std::string& label) {
  for (const auto& q : record["quantities"])
    if (q["label"] == label) return q["value"].get<double>();
  ADD_FAILURE() << "missing quantity " << label;
  return 0;
}

}  // namespace

TEST(CliVerifyFrame, CyclicPasses) {
  const auto r = run({"verify-frame", "--config", config("cyclic.conf"), "--pairs", "300"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = r.json();
  EXPECT_EQ(j["status"], "pass");
  const auto fb = find_result(j, "frame_bounds");
  ASSERT_TRUE(fb);
  EXPECT_NEAR(quantity(*fb, "a_est"), std::sqrt(5.0), 1e-9);
  EXPECT_NEAR(quantity(*fb, "b_est"), std::sqrt(5.0), 1e-9);
  EXPECT_EQ(j["config_digest"].get<std::string>().size(), 64u);
}

TEST(CliVerifyFrame, UnderstatedBesselBoundIsViolation) {
  const auto r = run({"verify-frame", "--config", config("cyclic_understated.conf"), "--pairs", "100"});
  EXPECT_EQ(r.code, 2);
  const auto b = find_result(r.json(), "bessel");
  ASSERT_TRUE(b);
  EXPECT_EQ((*b)["details"]["violations"], 100);
}

TEST(CliVerifyFrame, MissingConfigIsUsageError) {
  const auto r = run({"verify-frame", "--config", "/nonexistent/lipframe.conf"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("cannot open"), std::string::npos);
  EXPECT_TRUE(r.out.empty());
}

TEST(CliVerifyFrame, CsvExport) {
  const fs::path csv = fs::temp_directory_path() / "lipframe_cli_test_pairs.csv";
  const auto r = run({"verify-frame", "--config", config("log_series_frame.conf"), "--pairs", "20", "--tol", "1e-8",
                      "--csv", csv.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "x,y,distance,ratio,certificate");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 20);
}

TEST(CliVerifyFrame, UnreachableToleranceIsInconclusive) {
  const auto cfg = write_temp("capped.conf", "frame = log_series 2 3 4\np = 1\n");
  EXPECT_EQ(run({"verify-frame", "--config", cfg.string(), "--pairs", "10", "--tol", "1e-12"}).code, 3);
}

TEST(CliApply, SingleTermAndBasepoint) {
  auto r = run({"apply", "--config", config("single_term.conf"), "--point", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto a = find_result(r.json(), "apply");
  ASSERT_TRUE(a);
  EXPECT_EQ((*a)["quantities"][0]["value"], Json::array({0.5, 0.0}));
  EXPECT_EQ(quantity(*a, "remainder_bound"), 0.0);
  r = run({"apply", "--config", config("single_term.conf"), "--point", "0"});
  EXPECT_EQ((*find_result(r.json(), "apply"))["quantities"][0]["value"], Json::array({0.0, 0.0}));
}

TEST(CliApply, LogSeriesCertificateRecorded) {
  const auto r = run({"apply", "--config", config("log_series.conf"), "--point", "2.6", "--tol", "1e-8"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto a = find_result(r.json(), "apply");
  EXPECT_LE(quantity(*a, "remainder_bound"), 1e-8);
  EXPECT_EQ((*a)["quantities"][1]["role"], "certificate");
}

TEST(CliApply, Errors) {
  EXPECT_EQ(run({"apply", "--config", config("single_term.conf"), "--point", "abc"}).code, 1);
  EXPECT_EQ(run({"apply", "--config", config("single_term.conf"), "--point", "5"}).code, 1);
  EXPECT_EQ(run({"apply", "--config", config("single_term.conf")}).code, 1);
  const auto capped = write_temp("apply_capped.conf",
                                 "frame = log_series 2 3 3\nbasepoint = 2\nsymbol = constant 1\nb = 1\nd = 1\n");
  EXPECT_EQ(run({"apply", "--config", capped.string(), "--point", "3", "--tol", "1e-9"}).code, 3);
}

TEST(CliCheckTheorems, ReferenceConfigPasses) {
  const auto r = run({"check-theorems", "--config", config("log_series.conf"), "--suite", "all", "--pairs", "500"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const Json j = r.json();
  for (const char* name : {"norm", "compactness_m10", "injectivity", "continuity_symbol", "continuity_vector"}) {
    const auto rec = find_result(j, name);
    ASSERT_TRUE(rec) << name;
    EXPECT_EQ((*rec)["status"], "pass") << name;
  }
  EXPECT_FALSE(j["annotations"].empty());
}

TEST(CliCheckTheorems, UnderstatedBIsViolation) {
  const auto cfg = write_temp("understated.conf",
                              "space = interval -1 1\nframe = list identity\nsymbol = list 1\nvectors = list 1 0\n"
                              "b = 0.5\nd = 1\n");
  const auto r = run({"check-theorems", "--config", cfg.string(), "--suite", "norm", "--pairs", "50"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.json()["status"], "violation");
}

TEST(CliCheckTheorems, ZeroFunctionalIsInconclusive) {
  const auto cfg = write_temp("zero.conf",
                              "space = interval -1 1\nframe = list zero\nsymbol = list 1\nvectors = list 1 0\n"
                              "b = 1\nd = 1\nriesz_a = 1\nsymbol2 = list 2\ncandidates = 0.25; 0.5; 1\n");
  const auto r = run({"check-theorems", "--config", cfg.string(), "--suite", "injectivity"});
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(r.json()["status"], "inconclusive");
}

TEST(CliCheckTheorems, MissingSuiteKeys) {
  EXPECT_EQ(run({"check-theorems", "--config", config("single_term.conf"), "--suite", "continuity_vector"}).code, 1);
  const auto r = run({"check-theorems", "--config", config("finite_mix.conf"), "--pairs", "200"});
  ASSERT_EQ(r.code, 0) << r.out;
  EXPECT_EQ((*find_result(r.json(), "injectivity"))["status"], "skipped");
  EXPECT_EQ(run({"check-theorems", "--config", config("single_term.conf"), "--suite", "nonsense"}).code, 1);
}

TEST(CliCheckTheorems, RolesOnEveryQuantity) {
  const auto r = run({"check-theorems", "--config", config("log_series.conf"), "--pairs", "200"});
  const std::set<std::string> roles = {"estimate-lower", "estimate-upper", "bound-upper", "certificate",
                                       "exact",          "parameter",      "value"};
  for (const auto& rec : r.json()["results"])
    for (const auto& q : rec["quantities"]) EXPECT_TRUE(roles.count(q["role"].get<std::string>())) << q.dump();
}

TEST(CliReports, DeterministicModuloTimings) {
  const std::vector<std::string> args = {"check-theorems", "--config", config("log_series.conf"), "--pairs", "300",
                                         "--seed", "11"};
  Json a = run(args).json(), b = run(args).json();
  ASSERT_TRUE(a.contains("timings"));
  a.erase("timings");
  b.erase("timings");
  EXPECT_EQ(a.dump(), b.dump());
  Json c = run({"check-theorems", "--config", config("log_series.conf"), "--pairs", "300", "--seed", "12"}).json();
  c.erase("timings");
  EXPECT_NE(a.dump(), c.dump());
}

TEST(CliReports, RoundTrip) {
  const auto r = run({"verify-frame", "--config", config("log_series_frame.conf"), "--pairs", "50"});
  const Json j = r.json();
  EXPECT_EQ(Json::parse(j.dump()), j);
  EXPECT_EQ(j.dump(2) + "\n", r.out);
}

TEST(CliReports, OutFile) {
  const fs::path out = fs::temp_directory_path() / "lipframe_cli_test_report.json";
  const auto r = run({"verify-frame", "--config", config("cyclic.conf"), "--pairs", "10", "--out", out.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(out);
  EXPECT_EQ(Json::parse(in)["command"], "verify-frame");
}

TEST(CliValidateMetric, PlantedTriangleViolation) {
  const auto r = run({"validate-metric", "--metric", config("triangle_violation.txt")});
  EXPECT_EQ(r.code, 2);
  const auto rec = find_result(r.json(), "metric_axioms");
  ASSERT_TRUE(rec);
  EXPECT_EQ((*rec)["details"]["axiom"], "triangle");
  EXPECT_EQ((*rec)["details"]["witness_indices"], Json::array({0, 1, 2}));
}

TEST(CliValidateMetric, ValidSpaces) {
  EXPECT_EQ(run({"validate-metric", "--metric", config("square.txt")}).code, 0);
  EXPECT_EQ(run({"validate-metric", "--config", config("log_series.conf"), "--pairs", "500"}).code, 0);
  EXPECT_EQ(run({"validate-metric"}).code, 1);
  const auto bad = write_temp("asym.txt", "2\nA B\n0 1\n2 0\n");
  EXPECT_EQ(run({"validate-metric", "--metric", bad.string()}).code, 2);
  const auto malformed = write_temp("malformed.txt", "2\nA B\n0 1\n");
  EXPECT_EQ(run({"validate-metric", "--metric", malformed.string()}).code, 1);
}

TEST(CliFrame, DescribesKnownBounds) {
  const auto r = run({"frame", "cyclic", "3", "5", "2", "--p", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto rec = find_result(r.json(), "frame");
  EXPECT_NEAR(quantity(*rec, "a"), std::sqrt(5.0), 1e-15);
  EXPECT_EQ(run({"frame", "cyclic", "3", "2", "2"}).code, 1);
  EXPECT_EQ(run({"frame", "unknown"}).code, 1);
}

TEST(CliUsage, HelpAndUnknown) {
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"verify-frame", "--pairs", "x", "--config", config("cyclic.conf")}).code, 1);
}
