#pragma once

// Verification reports shared by all checks.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace twistkit {

enum class Status { pass, fail, blocked, error };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::blocked: return "blocked";
    case Status::error: return "error";
  }
  return "?";
}

struct Witness {
  std::string label;
  std::string value;  // exact rendering
};

struct Report {
  Report() = default;
  Report(std::string check_name, std::string subject_name) : check(std::move(check_name)), subject(std::move(subject_name)) {}

  std::string check;
  std::string subject;
  Status status = Status::pass;
  std::vector<std::string> details;  // one line per order or per sample group
  std::optional<std::size_t> lowest_failing_order;
  std::vector<Witness> witnesses;

  bool passed() const { return status == Status::pass; }

  void fail_at(std::size_t order) {
    status = Status::fail;
    if (!lowest_failing_order || order < *lowest_failing_order) lowest_failing_order = order;
  }
  void fail() {
    if (status == Status::pass) status = Status::fail;
  }
  void witness(std::string label, std::string value) { witnesses.push_back({std::move(label), std::move(value)}); }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["check"] = check;
    j["subject"] = subject;
    j["status"] = to_string(status);
    j["details"] = details;
    j["lowest_failing_order"] = lowest_failing_order ? nlohmann::ordered_json(*lowest_failing_order) : nullptr;
    auto w = nlohmann::ordered_json::array();
    for (const auto& x : witnesses) w.push_back({{"label", x.label}, {"value", x.value}});
    j["witnesses"] = w;
    return j;
  }

  std::string to_text() const {
    std::string out = "[" + std::string(to_string(status)) + "] " + check;
    if (!subject.empty()) out += " (" + subject + ")";
    if (lowest_failing_order) out += " lowest failing order " + std::to_string(*lowest_failing_order);
    out += "\n";
    for (const auto& d : details) out += "    " + d + "\n";
    for (const auto& w : witnesses) out += "    " + w.label + " = " + w.value + "\n";
    return out;
  }
};

/// Merges sub-reports into one: fails if any part fails, keeps the minimum
/// failing order.
inline Report merge_reports(std::string check, std::string subject, const std::vector<Report>& parts) {
  Report r{std::move(check), std::move(subject)};
  for (const auto& p : parts) {
    r.details.push_back(std::string(to_string(p.status)) + ": " + p.check);
    if (p.status != Status::pass) {
      if (p.lowest_failing_order)
        r.fail_at(*p.lowest_failing_order);
      else
        r.fail();
      for (const auto& w : p.witnesses) r.witness(p.check + ": " + w.label, w.value);
    }
  }
  return r;
}

}  // namespace twistkit
