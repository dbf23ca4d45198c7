#include "twistlab/report.hpp"

#include <sstream>

namespace twl {

using nlohmann::ordered_json;

std::string to_string(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kObserved: return "observed";
    case Status::kSkipped: return "skipped";
  }
  return "unknown";
}

Report::Report(std::string command, ordered_json config, bool heuristic)
    : command_(std::move(command)), config_(std::move(config)), heuristic_(heuristic) {}

const CheckRecord* Report::find(const std::string& name) const {
  for (const auto& c : checks_) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool Report::any_failed() const {
  for (const auto& c : checks_) {
    if (c.status == Status::kFail) return true;
  }
  return false;
}

ordered_json Report::to_json() const {
  ordered_json checks = ordered_json::array();
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& c : checks_) {
    ++counts[static_cast<int>(c.status)];
    ordered_json rec;
    rec["name"] = c.name;
    rec["status"] = to_string(c.status);
    rec["anchor"] = c.anchor;
    if (!c.note.empty()) rec["note"] = c.note;
    rec["data"] = c.data;
    checks.push_back(std::move(rec));
  }
  ordered_json result;
  result["checks"] = std::move(checks);
  result["summary"] = {{"pass", counts[0]},
                       {"fail", counts[1]},
                       {"observed", counts[2]},
                       {"skipped", counts[3]}};
  return envelope(command_, config_, heuristic_, std::move(result));
}

std::string Report::to_csv() const {
  std::ostringstream os;
  os << csv_preamble(command_, config_, heuristic_);
  os << "name,status,anchor,note\n";
  for (const auto& c : checks_) {
    os << csv_field(c.name) << ',' << to_string(c.status) << ',' << csv_field(c.anchor) << ','
       << csv_field(c.note) << '\n';
  }
  return os.str();
}

ordered_json envelope(const std::string& command, const ordered_json& config, bool heuristic,
                      ordered_json result) {
  ordered_json out;
  out["schema"] = kSchema;
  out["command"] = command;
  out["config"] = config;
  out["heuristic"] = heuristic;
  out["result"] = std::move(result);
  return out;
}

std::string csv_preamble(const std::string& command, const ordered_json& config, bool heuristic) {
  std::string out = "# schema: " + std::string(kSchema) + "\n";
  out += "# command: " + command + "\n";
  out += "# config: " + config.dump() + "\n";
  if (heuristic) out += "# heuristic: prime-field run\n";
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace twl
