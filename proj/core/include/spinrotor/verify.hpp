#pragma once

#include <limits>
#include <string>
#include <vector>

namespace spinrotor::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  double max_residual = 0.0;
  double convergence_order = std::numeric_limits<double>::quiet_NaN();
  std::string details;
};

struct Options {
  unsigned long long seed = 20240817ULL;
  int parallel = 1;
  std::vector<std::string> subset;  // empty = run everything
};

struct Report {
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

// Registered check names, in criterion order.
const std::vector<std::string>& check_names();

// Runs the verification suite. Each check pins its own tolerances; a check
// that throws is reported as failed with the error in `details`.
Report run(const Options& opts);

}  // namespace spinrotor::verify
