#pragma once
// The acceptance suite: eleven end-to-end criteria covering enumeration,
// functional equations, orbit sums, reflection, the kernel pipeline, closed
// forms, guessing, asymptotics and mutation sensitivity.  Each criterion
// prints exactly one PASS/FAIL line to the log stream.

#include <iosfwd>
#include <string>
#include <vector>

namespace walks {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0;
  std::string detail;  // first discrepancy or summary counts
};

std::vector<CriterionResult> run_acceptance(std::ostream& log);
bool all_passed(const std::vector<CriterionResult>& rs);

}  // namespace walks
