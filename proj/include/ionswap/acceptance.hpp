#pragma once

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ionswap/config.hpp"

namespace ionswap {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

struct AcceptanceOptions {
  int jobs = 1;
  std::ostream* progress = nullptr;  // per-criterion line as each finishes
};

// Full quantitative gate of the deliverable, from design numbers through the
// swap searches to the scaling study. Self-contained: only the reference
// configuration feeds it, and nothing is cached.
std::vector<CriterionResult> run_acceptance(const RunConfig& cfg,
                                            const AcceptanceOptions& opt = {});

bool all_passed(const std::vector<CriterionResult>& results);

std::string criterion_line(const CriterionResult& r);

nlohmann::json acceptance_json(const std::vector<CriterionResult>& results);

}  // namespace ionswap
