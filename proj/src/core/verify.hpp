#pragma once

#include <string>
#include <vector>

#include "core/config.hpp"

namespace owg {

struct CheckResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "skipped"
  std::string detail;

  bool failed() const { return status == "fail"; }
};

// Runs the full acceptance suite against the configured profile. Checks that
// need guided modes report "skipped" when the profile carries none.
// Tolerances are pinned inside the implementation.
std::vector<CheckResult> run_acceptance(const RunConfig& cfg);

bool all_passed(const std::vector<CheckResult>& results);
std::string verify_table(const std::vector<CheckResult>& results);
std::string verify_json(const std::vector<CheckResult>& results);

}  // namespace owg
