#pragma once

// End-to-end checks of the library's headline numbers with their runtime
// budgets. Shared by the acceptance test binary and `dicke selftest`.

#include <iosfwd>
#include <string>
#include <vector>

namespace dicke {

struct AcceptanceOutcome {
  int id = 0;
  std::string title;
  bool passed = false;  // every check held and seconds <= budget_seconds
  std::string detail;   // measured values, and the failing checks if any
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

/// Runs all criteria in order, writing one line per criterion to `out` as it
/// finishes (pass `nullptr` for silence).
std::vector<AcceptanceOutcome> run_acceptance_suite(std::ostream* out = nullptr);

std::string format_outcome(const AcceptanceOutcome& o);

}  // namespace dicke
