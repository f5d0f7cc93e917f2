// Runs the acceptance criteria and prints one line per criterion. Exits
// nonzero when any criterion fails.
#include "arslie/verify.hpp"

#include <cstdio>

int main() {
  int failed = 0;
  for (const arslie::Criterion& c : arslie::acceptance_criteria()) {
    const arslie::CriterionResult r = arslie::run_criterion(c);
    std::printf("criterion %d: %s - %s (%.2f s)\n", r.id, r.passed() ? "PASS" : "FAIL", r.title.c_str(), r.seconds);
    for (const arslie::CheckResult& k : r.checks)
      std::printf("    [%s] %s: %s\n", k.passed ? "ok" : "FAILED", k.name.c_str(), k.detail.c_str());
    if (!r.passed()) ++failed;
  }
  std::printf("%d criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
