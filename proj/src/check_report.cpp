#include "treefold/check_report.hpp"

namespace treefold {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::PASS: return "PASS";
    case CheckStatus::FAIL: return "FAIL";
    case CheckStatus::INCONCLUSIVE: return "INCONCLUSIVE";
  }
  return "?";
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j{{"check", check},  {"params", params}, {"status", to_string(status)},
                   {"witness", witnesses}, {"samples", samples}, {"seed", seed}};
  if (!note.empty()) j["note"] = note;
  return j;
}

std::string CheckReport::line() const {
  std::string s = "[" + to_string(status) + "] " + check;
  if (!params.empty()) s += " " + params.dump();
  if (samples > 0) s += " (samples=" + std::to_string(samples) + ")";
  if (!note.empty()) s += " -- " + note;
  if (failed() && !witnesses.empty()) s += " witness=" + witnesses.front().dump();
  return s;
}

}  // namespace treefold
