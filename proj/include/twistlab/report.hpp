#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace twl {

inline constexpr const char* kSchema = "twl-report/1";

/// pass and fail are reserved for exact finite statements; anything that
/// depends on a truncation window is at best observed.
enum class Status { kPass, kFail, kObserved, kSkipped };

std::string to_string(Status s);

struct CheckRecord {
  std::string name;
  Status status = Status::kSkipped;
  std::string anchor;  // the statement the check witnesses
  std::string note;
  nlohmann::ordered_json data = nlohmann::ordered_json::object();
  double seconds = 0;  // kept out of the serialized payload
};

class Report {
 public:
  Report(std::string command, nlohmann::ordered_json config, bool heuristic);

  void add(CheckRecord record) { checks_.push_back(std::move(record)); }
  const std::vector<CheckRecord>& checks() const { return checks_; }
  const CheckRecord* find(const std::string& name) const;

  bool any_failed() const;
  int exit_code() const { return any_failed() ? 1 : 0; }

  nlohmann::ordered_json to_json() const;
  /// name,status,anchor,note rows after the envelope comment lines.
  std::string to_csv() const;

 private:
  std::string command_;
  nlohmann::ordered_json config_;
  bool heuristic_;
  std::vector<CheckRecord> checks_;
};

/// {"schema", "command", "config", "heuristic", "result"} wrapper.
nlohmann::ordered_json envelope(const std::string& command, const nlohmann::ordered_json& config,
                                bool heuristic, nlohmann::ordered_json result);

/// Comment lines carrying the schema tag, command and compact config.
std::string csv_preamble(const std::string& command, const nlohmann::ordered_json& config,
                         bool heuristic);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(const std::string& s);

/// JSON text with two-space indent and a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace twl
