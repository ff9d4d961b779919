#pragma once

#include <cstdint>
#include <vector>

#include "gcinf/checks.hpp"

namespace gcinf {

inline constexpr int kCriterionCount = 11;

struct AcceptanceOptions {
  std::uint64_t seed = 7;
};

struct CriterionResult {
  int id;
  ReportSection section;

  bool passed() const { return section.passed(); }
};

// Runs one acceptance criterion (1 .. kCriterionCount). Each criterion is a
// group of checks with fixed tolerances over the built-in catalog and
// seeded random instances.
CriterionResult run_criterion(int id, const AcceptanceOptions& options = {});
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

}  // namespace gcinf
