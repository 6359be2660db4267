// Acceptance gate: runs every criterion against the default step-index
// benchmark profile and prints one pass/fail line per criterion. Exits
// nonzero if any criterion fails.

#include <iostream>

#include "core/verify.hpp"

int main() {
  const owg::RunConfig cfg;  // k = 1, h = 1, n_cl = 1, n_co = 1.5
  const auto results = owg::run_acceptance(cfg);
  std::cout << owg::verify_table(results);
  return owg::all_passed(results) ? 0 : 1;
}
