#pragma once

#include <functional>
#include <string>
#include <vector>

namespace arslie {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CheckResult> checks;
  double seconds = 0.0;
  bool passed() const;
};

struct Criterion {
  int id;
  std::string title;
  std::function<std::vector<CheckResult>()> run;
};

/// The numbered acceptance criteria, each backed by oracles that do not share
/// code paths with the quantity under test.
const std::vector<Criterion>& acceptance_criteria();

/// Runs one criterion and times it; a criterion with a runtime budget fails
/// when it is exceeded.
CriterionResult run_criterion(const Criterion& c);

}  // namespace arslie
