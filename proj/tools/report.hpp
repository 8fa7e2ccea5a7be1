#pragma once

#include <chrono>
#include <string>
#include <vector>

#include "json.hpp"
#include "lipframe/lipframe.hpp"

namespace lipframe::cli {

using Json = nlohmann::ordered_json;

/// Soundness direction of a reported number.
enum class Role { estimate_lower, estimate_upper, bound_upper, certificate, exact, parameter, value };

const char* to_string(Role role);

enum class Status { pass, violation, inconclusive, skipped, info };

const char* to_string(Status status);

Json to_json(const Point& p);
Json to_json(const PointPair& pair);
Json to_json(const Vector& v);

/// One named check or measurement: a list of role-tagged quantities plus
/// free-form details.
class Record {
 public:
  Record(std::string name, Status status = Status::info) : name_(std::move(name)), status_(status) {}

  Record& quantity(const std::string& label, Role role, double value);
  Record& quantity(const std::string& label, Role role, const Vector& value);
  Record& detail(const std::string& key, Json value);
  Record& status(Status s) {
    status_ = s;
    return *this;
  }
  Status status() const { return status_; }
  Json to_json() const;

 private:
  std::string name_;
  Status status_;
  Json quantities_ = Json::array();
  Json details_ = Json::object();
};

class Report {
 public:
  Report(std::string command, std::string config_digest);

  void input(const std::string& key, Json value) { inputs_[key] = std::move(value); }
  void add(Record record) { results_.push_back(std::move(record)); }
  void annotate(std::string note) { annotations_.push_back(std::move(note)); }

  /// violation if any record is a violation, otherwise inconclusive if any
  /// record is inconclusive, otherwise pass.
  Status status() const;
  int exit_code() const;

  /// Runs `fn` and records its wall time under `stage`.
  template <class Fn>
  auto timed(const std::string& stage, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    struct Stop {
      Report* self;
      std::string stage;
      std::chrono::steady_clock::time_point start;
      ~Stop() {
        self->timings_[stage] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      }
    } stop{this, stage, start};
    return fn();
  }

  Json to_json() const;

 private:
  std::string command_;
  std::string digest_;
  Json inputs_ = Json::object();
  std::vector<Record> results_;
  std::vector<std::string> annotations_;
  Json timings_ = Json::object();
};

int exit_code(Status status);

/// Hex SHA-256 of the given bytes.
std::string sha256_hex(const std::string& bytes);

}  // namespace lipframe::cli
