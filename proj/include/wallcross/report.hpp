#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wallcross/numeric.hpp"

namespace wallcross {

enum class CheckStatus { Pass, ExpectedDefect, Fail };

inline const char* status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::ExpectedDefect: return "expected-defect";
    case CheckStatus::Fail: return "fail";
  }
  return "?";
}

/// One verification line: deterministic identifier, outcome, and the leading
/// residual when there is one.
struct CheckResult {
  std::string id;
  CheckStatus status = CheckStatus::Pass;
  std::string residual;   // canonical leading-part expression, empty if zero
  std::string valuation;  // leading valuation, empty if no residual
  std::string location;   // wall / cell / edge label
  std::string note;       // extra context on failures
};

struct Report {
  std::string scenario;
  std::vector<CheckResult> checks;

  bool all_expected() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::Fail) return false;
    return true;
  }
};

inline std::string emit_report_text(const Report& r) {
  std::string out = "scenario " + r.scenario + "\n";
  for (const auto& c : r.checks) {
    std::string line = std::string(status_name(c.status));
    for (auto& ch : line) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
    line += " " + c.id;
    if (!c.residual.empty()) line += "  residual = " + c.residual;
    if (!c.valuation.empty()) line += "  val = " + c.valuation;
    if (!c.note.empty()) line += "  (" + c.note + ")";
    out += line + "\n";
  }
  out += r.all_expected() ? "result: OK\n" : "result: MISMATCH\n";
  return out;
}

inline std::string emit_report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["scenario"] = r.scenario;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    nlohmann::ordered_json e;
    e["id"] = c.id;
    e["status"] = status_name(c.status);
    e["residual"] = c.residual;
    e["valuation"] = c.valuation;
    e["location"] = c.location;
    if (!c.note.empty()) e["note"] = c.note;
    j["checks"].push_back(e);
  }
  j["ok"] = r.all_expected();
  return j.dump(2) + "\n";
}

inline std::string emit_report(const Report& r, const std::string& format) {
  if (format == "text") return emit_report_text(r);
  if (format == "json") return emit_report_json(r);
  throw std::invalid_argument("unknown report format: " + format);
}

}  // namespace wallcross
