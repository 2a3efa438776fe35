#pragma once

#include <map>
#include <string>

#include "parabolica/render.hpp"

namespace parabolica {

/// Run configuration: slice, window, resolution, budgets, tolerances, seed.
/// File format is plain-text `key = value` lines under `[section]` headers;
/// zero-dependency and diffable.
struct Config {
  int p = 1;
  int q = 1;
  Window window;
  int resolution = 512;
  int budget_escape = 2048;
  int budget_parabolic = 10000;  // per q
  double tol_landing = 1e-6;
  double tol_dp_near = 1e-6;
  double entry_threshold = 32.0;
  unsigned long long seed = 0;
  int threads = 0;  // 0: PARABOLICA_THREADS or hardware
  std::string out_path;
  std::string format = "ppm";

  static Config from_file(const std::string& path);
  void apply(const std::map<std::string, std::string>& kv);
  void validate() const;  // throws with an explicit failure listing

  ClassifyBudget classify_budget() const;
};

std::string format_double(double x);  // 17 significant digits

}  // namespace parabolica
