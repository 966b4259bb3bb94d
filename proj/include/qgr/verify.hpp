#pragma once

#include <string>
#include <vector>

namespace qgr {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  double limit_seconds = 0.0;
  std::string detail;
};

// Runs the full verification suite; deterministic given the seed.
std::vector<CriterionResult> run_verification(unsigned rng_seed = 20240801);

std::string scoreboard_text(const std::vector<CriterionResult>& results);
std::string scoreboard_json(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace qgr
