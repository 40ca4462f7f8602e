// Acceptance criteria A1-A13: one PASS/FAIL line per criterion.

#include <cstdio>
#include <exception>

#include "realpos/suites.hpp"

namespace {

struct Criterion {
  const char* id;
  const char* suite;
  const char* title;
};

constexpr Criterion kCriteria[] = {
    {"A1", "f-bijection", "F-transform bijection"},
    {"A2", "root-laws", "root laws"},
    {"A3", "method-agreement", "power method agreement"},
    {"A4", "sector-bound", "sector bound"},
    {"A5", "support", "support projections"},
    {"A6", "peak", "peak projections"},
    {"A7", "half-f-monotonicity", "half-F root monotonicity"},
    {"A8", "lemerdy", "Le Merdy counterexample"},
    {"A9", "a-h", "A_H and amplification"},
    {"A10", "oa-unital", "oa(S) unitality"},
    {"A11", "interp", "interpolation theorems"},
    {"A12", "vav", "vav identity"},
    {"A13", "kernel", "kernel invariants"},
};

}  // namespace

int main() {
  int failed = 0;
  double total = 0.0;
  for (const auto& c : kCriteria) {
    bool pass = false;
    char detail[512];
    try {
      const auto r = realpos::run_suite(c.suite);
      pass = r.passed;
      total += r.wall_seconds;
      std::snprintf(detail, sizeof detail, "cases=%zu failures=%zu worst_margin=%.3g time=%.2fs", r.cases,
                    r.failures.size(), r.worst_margin, r.wall_seconds);
      if (!pass && !r.failures.empty()) {
        std::printf("  first failure (%s case %zu): %s\n", c.suite, r.failures.front().case_index,
                    r.failures.front().detail.c_str());
      }
    } catch (const std::exception& e) {
      std::snprintf(detail, sizeof detail, "error: %s", e.what());
    }
    std::printf("%s %s %s [%s] %s\n", c.id, pass ? "PASS" : "FAIL", c.title, c.suite, detail);
    std::fflush(stdout);
    if (!pass) ++failed;
  }
  std::printf("%d/%zu criteria passed, suite time %.1fs\n", static_cast<int>(std::size(kCriteria)) - failed,
              std::size(kCriteria), total);
  return failed == 0 ? 0 : 1;
}
