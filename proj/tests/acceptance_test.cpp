// Runs every acceptance criterion and prints one line per criterion.

#include <cstdio>
#include <exception>

#include "gcinf/acceptance.hpp"

int main() {
  int failures = 0;
  for (int id = 1; id <= gcinf::kCriterionCount; ++id) {
    try {
      const auto r = gcinf::run_criterion(id);
      const bool ok = r.passed();
      std::printf("[%s] criterion %2d: %s\n", ok ? "PASS" : "FAIL", id, r.section.title.c_str());
      if (!ok) {
        ++failures;
        for (const auto& c : r.section.checks)
          if (!c.passed())
            std::printf("         %s: max %.3e (tol %.1e, %zu points)\n", c.name().c_str(), c.max(), c.tolerance(),
                        c.evaluated());
        if (!r.section.error.empty()) std::printf("         error: %s\n", r.section.error.c_str());
      }
    } catch (const std::exception& e) {
      ++failures;
      std::printf("[FAIL] criterion %2d: threw %s\n", id, e.what());
    }
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", gcinf::kCriterionCount - failures, gcinf::kCriterionCount);
  return failures == 0 ? 0 : 1;
}
