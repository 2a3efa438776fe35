#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "parabolica/config.hpp"

using namespace parabolica;

TEST_CASE("config file parsing with sections") {
  const char* path = "test_config_tmp.cfg";
  {
    std::ofstream f(path);
    f << "# comment\n";
    f << "[slice]\np = 1\nq = 2\n";
    f << "[window]\ncenter_re = -0.5\ncenter_im = 0.25\nwidth = 4\n";
    f << "[render]\nresolution = 128\nthreads = 2\n";
    f << "[budget]\nescape = 100\nparabolic = 500\n";
    f << "[run]\nseed = 7\n";
  }
  Config cfg = Config::from_file(path);
  CHECK(cfg.p == 1);
  CHECK(cfg.q == 2);
  CHECK(cfg.window.center_re == -0.5);
  CHECK(cfg.resolution == 128);
  CHECK(cfg.budget_escape == 100);
  CHECK(cfg.seed == 7);
  std::remove(path);
}

TEST_CASE("config validation failures are listed explicitly") {
  Config cfg;
  cfg.tol_landing = -1.0;
  cfg.q = 4;
  cfg.p = 2;  // gcd != 1
  bool threw = false;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    threw = true;
    std::string msg = e.what();
    CHECK(msg.find("gcd") != std::string::npos);
    CHECK(msg.find("tolerance.landing") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("17 significant digit printing round-trips doubles") {
  double vals[] = {1.0 / 3.0, 2.718281828459045, 1e-17, -0.1234567890123456};
  for (double v : vals) {
    std::string sdump = format_double(v);
    CHECK(std::stod(sdump) == v);
  }
}
