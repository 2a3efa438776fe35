#pragma once

#include <string>
#include <vector>

#include "parabolica/slice.hpp"

namespace parabolica {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// The per-module invariant suites, bundled for `parabolica verify p q`.
/// Exit-status contract: all pass <-> 0.
std::vector<CheckResult> run_verification(int p, int q);

/// Helpers shared with the acceptance suite.
double max_conjugacy_residual(const Slice& s, int n_samples, unsigned long long seed);
double max_boettcher_residual(const Slice& s, cplx a, int grid, unsigned long long seed);
double max_abel_residual(const Slice& s, cplx a, int grid);

}  // namespace parabolica
