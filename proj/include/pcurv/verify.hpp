#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

namespace pcurv::verify {

struct CheckResult {
  std::string id;
  std::string name;
  bool passed = false;
  std::string detail;
  double millis = 0.0;
};

struct Check {
  std::string id;
  std::string name;
  bool full_only = false;
  /// Returns (passed, detail). Exceptions are reported as failures.
  std::function<std::pair<bool, std::string>()> run;
};

/// The toolkit's self-verification checks: closed-form operator identities,
/// the classical p = 2 reduction, product identities, invariances and the
/// gradient check at the quick level; solver-backed curvature results
/// (nonnegativity, divergence, star values, oracle agreement) at the full
/// level.
const std::vector<Check>& standard_checks();

CheckResult run_check(const Check& check);
std::vector<CheckResult> run_suite(const std::vector<Check>& checks, bool full);
std::vector<CheckResult> run_suite(bool full);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace pcurv::verify
