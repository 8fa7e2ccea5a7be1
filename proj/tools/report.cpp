#include "report.hpp"

#include <openssl/evp.h>

#include <iomanip>
#include <sstream>

namespace lipframe::cli {

const char* to_string(Role role) {
  switch (role) {
    case Role::estimate_lower: return "estimate-lower";
    case Role::estimate_upper: return "estimate-upper";
    case Role::bound_upper: return "bound-upper";
    case Role::certificate: return "certificate";
    case Role::exact: return "exact";
    case Role::parameter: return "parameter";
    case Role::value: return "value";
  }
  return "unknown";
}

const char* to_string(Status status) {
  switch (status) {
    case Status::pass: return "pass";
    case Status::violation: return "violation";
    case Status::inconclusive: return "inconclusive";
    case Status::skipped: return "skipped";
    case Status::info: return "info";
  }
  return "unknown";
}

Json to_json(const Point& p) {
  if (p.is_scalar()) return p.scalar();
  if (p.is_vector()) return to_json(p.vector());
  return p.name();
}

Json to_json(const PointPair& pair) { return Json::array({to_json(pair.first), to_json(pair.second)}); }

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Record& Record::quantity(const std::string& label, Role role, double value) {
  quantities_.push_back({{"label", label}, {"role", cli::to_string(role)}, {"value", value}});
  return *this;
}

Record& Record::quantity(const std::string& label, Role role, const Vector& value) {
  quantities_.push_back({{"label", label}, {"role", cli::to_string(role)}, {"value", cli::to_json(value)}});
  return *this;
}

Record& Record::detail(const std::string& key, Json value) {
  details_[key] = std::move(value);
  return *this;
}

Json Record::to_json() const {
  Json j;
  j["name"] = name_;
  j["status"] = cli::to_string(status_);
  j["quantities"] = quantities_;
  if (!details_.empty()) j["details"] = details_;
  return j;
}

Report::Report(std::string command, std::string config_digest)
    : command_(std::move(command)), digest_(std::move(config_digest)) {}

Status Report::status() const {
  bool inconclusive = false;
  for (const auto& r : results_) {
    if (r.status() == Status::violation) return Status::violation;
    inconclusive |= r.status() == Status::inconclusive;
  }
  return inconclusive ? Status::inconclusive : Status::pass;
}

int exit_code(Status status) {
  switch (status) {
    case Status::violation: return 2;
    case Status::inconclusive: return 3;
    default: return 0;
  }
}

int Report::exit_code() const { return cli::exit_code(status()); }

Json Report::to_json() const {
  Json j;
  j["command"] = command_;
  j["config_digest"] = digest_;
  j["inputs"] = inputs_;
  Json results = Json::array();
  for (const auto& r : results_) results.push_back(r.to_json());
  j["results"] = results;
  j["annotations"] = annotations_;
  j["status"] = cli::to_string(status());
  j["timings"] = timings_;
  return j;
}

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 computation failed");
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return os.str();
}

}  // namespace lipframe::cli
