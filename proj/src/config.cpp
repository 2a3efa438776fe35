#include "parabolica/config.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace parabolica {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

static std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

Config Config::from_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("config: cannot open " + path);
  Config cfg;
  std::map<std::string, std::string> kv;
  std::string line, section;
  while (std::getline(f, line)) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos) throw std::runtime_error("config: bad line \"" + t + "\"");
    std::string key = trim(t.substr(0, eq));
    std::string val = trim(t.substr(eq + 1));
    kv[section.empty() ? key : section + "." + key] = val;
  }
  cfg.apply(kv);
  cfg.validate();
  return cfg;
}

void Config::apply(const std::map<std::string, std::string>& kv) {
  auto geti = [&](const std::string& k, int& dst) {
    auto it = kv.find(k);
    if (it != kv.end()) dst = std::stoi(it->second);
  };
  auto getd = [&](const std::string& k, double& dst) {
    auto it = kv.find(k);
    if (it != kv.end()) dst = std::stod(it->second);
  };
  geti("slice.p", p);
  geti("slice.q", q);
  getd("window.center_re", window.center_re);
  getd("window.center_im", window.center_im);
  getd("window.width", window.width);
  geti("render.resolution", resolution);
  geti("budget.escape", budget_escape);
  geti("budget.parabolic", budget_parabolic);
  getd("tolerance.landing", tol_landing);
  getd("tolerance.dp_near", tol_dp_near);
  getd("tolerance.entry_threshold", entry_threshold);
  geti("render.threads", threads);
  auto it = kv.find("run.seed");
  if (it != kv.end()) seed = std::stoull(it->second);
  it = kv.find("output.path");
  if (it != kv.end()) out_path = it->second;
  it = kv.find("output.format");
  if (it != kv.end()) format = it->second;
}

void Config::validate() const {
  std::string errors;
  if (q < 1) errors += "slice.q must be >= 1\n";
  if (q >= 1 && std::gcd(((p % q) + q) % q, q) != 1) errors += "gcd(p, q) must be 1\n";
  if (window.width <= 0) errors += "window.width must be positive\n";
  if (resolution < 16) errors += "render.resolution must be >= 16\n";
  if (budget_escape < 1) errors += "budget.escape must be >= 1\n";
  if (budget_parabolic < 1) errors += "budget.parabolic must be >= 1\n";
  if (!(tol_landing > 0)) errors += "tolerance.landing must be positive\n";
  if (!(tol_dp_near > 0)) errors += "tolerance.dp_near must be positive\n";
  if (!(entry_threshold > 0)) errors += "tolerance.entry_threshold must be positive\n";
  if (format != "ppm" && format != "json" && format != "csv" && format != "png")
    errors += "output.format must be one of ppm|png|json|csv\n";
  if (!errors.empty()) throw std::runtime_error("config validation failed:\n" + errors);
}

ClassifyBudget Config::classify_budget() const {
  ClassifyBudget b;
  b.escape = budget_escape;
  b.parabolic_per_q = budget_parabolic;
  b.entry_threshold = entry_threshold;
  b.dp_near_tol = tol_dp_near;
  return b;
}

}  // namespace parabolica
