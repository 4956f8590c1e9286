#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hecke::accept {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  double seconds = 0.0;
  std::string detail;  // measured values vs thresholds
};

struct Options {
  // scale-down knob for smoke runs; 1.0 = the full suite thresholds.
  // Anything below 1 reports but never passes the official gate.
  bool quick = false;
  unsigned workers = 0;  // 0 = hardware default
};

// Runs the full acceptance suite, printing one pass/fail line per
// criterion to `out`. Returns the per-criterion results; overall success
// is all-passed.
std::vector<CriterionResult> run_all(std::ostream& out, const Options& opt = {});

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace hecke::accept
