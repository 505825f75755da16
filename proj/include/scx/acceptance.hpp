#pragma once

// The eight acceptance criteria, shared by the acceptance test binary and
// `scx verify`.

#include <cstdint>
#include <string>
#include <vector>

#include "scx/rng.hpp"

namespace scx {

struct AcceptanceOptions {
  /// Every tolerance is divided by this factor.
  double tighten = 1.0;
  std::uint64_t seed = kDefaultSeed;
};

struct CriterionResult {
  int id;
  std::string title;
  bool passed;
  std::string detail;
  double seconds;
};

struct CriterionInfo {
  int id;
  std::string title;
};

std::vector<CriterionInfo> list_criteria();
CriterionResult run_criterion(int id, const AcceptanceOptions& opts);
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opts);

/// "PASS  [n] title: detail (t s)".
std::string format_result(const CriterionResult& r);

}  // namespace scx
