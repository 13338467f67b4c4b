#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace treefold {

enum class CheckStatus { PASS, FAIL, INCONCLUSIVE };

std::string to_string(CheckStatus s);

// Machine-readable outcome of one lemma/property verification.  A FAIL always
// carries at least one witness that reproduces the violation in isolation.
struct CheckReport {
  std::string check;
  nlohmann::json params = nlohmann::json::object();
  CheckStatus status = CheckStatus::INCONCLUSIVE;
  std::vector<nlohmann::json> witnesses;
  long samples = 0;
  std::uint64_t seed = 0;
  std::string note;

  bool passed() const { return status == CheckStatus::PASS; }
  bool failed() const { return status == CheckStatus::FAIL; }

  nlohmann::json to_json() const;
  std::string line() const;  // one human-readable summary line
};

}  // namespace treefold
