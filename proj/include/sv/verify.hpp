#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace sv {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0.0;
};

struct VerifyOptions {
  bool quick = false;      // 10x fewer reps; per-criterion band changes noted inline
  uint64_t seed = 20240811;
  int workers = 0;         // 0 = hardware concurrency
  std::vector<int> only;   // run a subset of criterion ids; empty = all
};

// Runs the acceptance suite, printing one [PASS]/[FAIL] line per criterion
// to `log` as results come in.  Returns every result; overall success is
// the conjunction.
std::vector<CriterionResult> run_acceptance(const VerifyOptions& options, std::ostream& log);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace sv
