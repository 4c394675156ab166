#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hhbes {

// The acceptance suite: one entry per desk-scale property, run in order.
// Each check is exact (boolean agreement, zero tolerance); timed entries
// also fail when they overrun their stated budget.

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

// `corpus` selects the corpus profile; "desk" is the only one shipped.
// Progress lines go to `progress` when given.
std::vector<CriterionResult> run_acceptance(const std::string& corpus = "desk",
                                            std::ostream* progress = nullptr);

// Prints one PASS/FAIL line per criterion; returns true iff all passed.
bool report(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace hhbes
