// Acceptance gate: runs every registered verification check and prints one
// line per criterion. Exits nonzero if any criterion fails.

#include <spinrotor/verify.hpp>

#include <cmath>
#include <cstdio>

int main() {
  spinrotor::verify::Options opts;
  const spinrotor::verify::Report report = spinrotor::verify::run(opts);

  int criterion = 0;
  int passed = 0;
  for (const auto& c : report.checks) {
    ++criterion;
    if (c.pass) ++passed;
    std::printf("[%s] criterion %d: %s  max_residual=%.3e",
                c.pass ? "PASS" : "FAIL", criterion, c.name.c_str(),
                c.max_residual);
    if (std::isfinite(c.convergence_order))
      std::printf("  order=%.3f", c.convergence_order);
    if (!c.details.empty()) std::printf("  (%s)", c.details.c_str());
    std::printf("\n");
  }
  std::printf("%s: %d/%zu criteria passed\n",
              report.all_pass() ? "ACCEPTED" : "REJECTED", passed,
              report.checks.size());
  return report.all_pass() ? 0 : 1;
}
