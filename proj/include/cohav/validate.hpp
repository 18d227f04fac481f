#pragma once

// Self-checks run by `cohav validate`:
//   a  cubic residual of first-order perturbation theory in epsilon and delta
//   b  two-step finite-difference agreement over the figure regimes
//   c  symmetric-sector pipeline against the full-Hilbert oracle, N <= 8
//   d  ZZZZ closed forms against the numerical pipeline, random configurations

#include <cstdint>
#include <string>
#include <vector>

namespace cohav {

struct CheckResult {
  char suite = 'a';
  std::string name;
  bool pass = false;
  double measured = 0.0;
  std::string criterion;  // e.g. "in [2.8, 3.2]", "< 1e-8"
};

std::vector<CheckResult> run_validation(char suite, std::uint64_t seed = 0);

/// suite in {'a', 'b', 'c', 'd'} or 0 for all of them.
std::vector<CheckResult> run_validation_suites(char suite, std::uint64_t seed = 0);

}  // namespace cohav
