#include "parabolica/verify.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "parabolica/address.hpp"
#include "parabolica/config.hpp"
#include "parabolica/covering.hpp"
#include "parabolica/fatou.hpp"
#include "parabolica/locus.hpp"
#include "parabolica/parabolic.hpp"
#include "parabolica/rays.hpp"

namespace parabolica {

double max_conjugacy_residual(const Slice& s, int n_samples, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < n_samples; ++i) {
    cplx sval(u(rng), u(rng));
    if (std::abs(sval) < 0.25) sval += cplx(0.6, 0.6);
    cplx z(u(rng), u(rng));
    cplx mu = std::sqrt(3.0 / s.lambda);
    cplx a = sigma_of_s(s, sval);
    worst = std::max(worst, std::abs(mu * eval_f(s.lambda, a, z) -
                                     eval_family(s, {Family::GHAT_s, sval}, mu * z)));
    worst = std::max(worst, std::abs(sval * eval_family(s, {Family::GHAT_s, sval}, z / sval) -
                                     eval_family(s, {Family::G_c, sval * sval}, z)));
    cplx c = sval * sval;
    worst = std::max(worst, std::abs(eval_family(s, {Family::G_c, c}, c * z) / c -
                                     eval_family(s, {Family::G_c, 1.0 / c}, z)));
  }
  return worst;
}

double max_boettcher_residual(const Slice& s, cplx a, int grid, unsigned long long seed) {
  BoettcherMap m(s, a);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  int used = 0;
  while (used < grid) {
    double r = m.r_out * (1.0 + 3.0 * u(rng));
    double th = 2.0 * M_PI * u(rng);
    cplx z = std::polar(r, th);
    auto p1 = boettcher_eval(m, z);
    auto p2 = boettcher_eval(m, m.f(z));
    if (!p1 || !p2) continue;
    cplx cube = (*p1) * (*p1) * (*p1);
    worst = std::max(worst, std::abs(*p2 - cube) / std::abs(cube));
    ++used;
  }
  return worst;
}

double max_abel_residual(const Slice& s, cplx a, int grid) {
  FatouChart::MapRef mr;
  mr.fam = Family::F_a;
  mr.param = a;
  mr.lambda = s.lambda;
  // normalization anchor is irrelevant for the residual; use a deep petal
  // point generated from the chart itself
  CriticalData cd = critical_points(s, a);
  auto chart = FatouChart::build(s, mr, cd.c_plus);
  if (!chart) {
    auto chart2 = FatouChart::build(s, mr, cd.c_minus);
    if (!chart2) return 1e300;
    chart = chart2;
  }
  double worst = 0.0;
  int side = std::max(2, static_cast<int>(std::sqrt(double(grid))));
  for (int i = 0; i < side; ++i) {
    for (int j = 0; j < side; ++j) {
      cplx xi(2.0 + 8.0 * i / (side - 1), -4.0 + 8.0 * j / (side - 1));
      auto z = chart->phi_inverse(xi);
      if (!z) return 1e300;
      auto p1 = chart->phi(*z);
      auto p2 = chart->phi(chart->apply_return(*z));
      if (!p1 || !p2) return 1e300;
      worst = std::max(worst, std::abs(*p2 - *p1 - 1.0));
    }
  }
  return worst;
}

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
CheckResult timed(const std::string& name, F&& fn) {
  CheckResult r;
  r.name = name;
  auto t0 = Clock::now();
  try {
    auto [pass, detail] = fn();
    r.pass = pass;
    r.detail = detail;
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

std::vector<CheckResult> run_verification(int p, int q) {
  std::vector<CheckResult> out;
  Slice s = make_slice(p, q);

  out.push_back(timed("goldberg-counts", [&]() -> std::pair<bool, std::string> {
    for (int d : {2, 3}) {
      for (int qq = 1; qq <= 6; ++qq)
        for (int pp = 1; pp <= qq; ++pp) {
          if (std::gcd(pp, qq) != 1) continue;
          auto cyc = enumerate_cycles(d, pp, qq);
          if (static_cast<long long>(cyc.size()) != binom(d + qq - 2, qq))
            return {false, "count mismatch at d=" + std::to_string(d) + " p/q=" +
                               std::to_string(pp) + "/" + std::to_string(qq)};
        }
    }
    return {true, "binomial(d+q-2,q) matched for d in {2,3}, q <= 6"};
  }));

  out.push_back(timed("theta-family", [&]() -> std::pair<bool, std::string> {
    std::vector<RotationCycle> thetas;
    for (int m = 0; m <= q; ++m) thetas.push_back(theta_m(s.p == 0 ? 1 : s.p, q, m));
    for (int i = 0; i <= q; ++i)
      for (int j = i + 1; j <= q; ++j)
        if (thetas[i].same_set(thetas[j])) return {false, "theta_m not pairwise distinct"};
    for (int m = 0; m <= q; ++m)
      if (!thetas[m].shifted_half().same_set(thetas[q - m]))
        return {false, "half-shift pairing failed"};
    auto all = enumerate_cycles(3, s.p == 0 ? 1 : s.p, q);
    if (all.size() != static_cast<size_t>(q + 1)) return {false, "Goldberg family size"};
    return {true, "distinct, half-shift paired, exhaustive"};
  }));

  out.push_back(timed("conjugacy-identities", [&]() -> std::pair<bool, std::string> {
    double worst = max_conjugacy_residual(s, 1000, 0);
    return {worst < 1e-10, "max residual " + format_double(worst)};
  }));

  out.push_back(timed("parabolic-coefficient-degree", [&]() -> std::pair<bool, std::string> {
    ParabolicCoefficient C = parabolic_coefficient(s, Family::G_c);
    if (C.coeff.degree() != q) return {false, "deg C = " + std::to_string(C.coeff.degree())};
    return {true, "deg C_{p/q}(1/c) = q, intermediates vanish"};
  }));

  out.push_back(timed("double-parabolic-set", [&]() -> std::pair<bool, std::string> {
    DoubleParabolicSet dp = double_parabolic_params(s);
    if (!dp.ok) return {false, dp.message};
    if (static_cast<int>(dp.params.size()) != q) return {false, "count != q"};
    for (const auto& par : dp.params) {
      double best = 1e300;
      for (const auto& other : dp.params) best = std::min(best, std::abs(other.a + par.a));
      if (best > 1e-8) return {false, "negation closure violated"};
    }
    return {true, "count q, |A| < 1e-8, negation-closed, cross-check " +
                      format_double(dp.cross_check)};
  }));

  out.push_back(timed("critical-point-equation", [&]() -> std::pair<bool, std::string> {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
      cplx a(u(rng), u(rng));
      CriticalData cd = critical_points(s, a);
      for (cplx c : {cd.c_plus, cd.c_minus})
        worst = std::max(worst, std::abs(s.lambda + 2.0 * a * c + 3.0 * c * c));
    }
    return {worst < 1e-10, "max residual " + format_double(worst)};
  }));

  out.push_back(timed("boettcher-functional-equation", [&]() -> std::pair<bool, std::string> {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) {
      cplx a(u(rng), u(rng));
      worst = std::max(worst, max_boettcher_residual(s, a, 20, 3 + i));
    }
    return {worst < 1e-9, "max relative residual " + format_double(worst)};
  }));

  out.push_back(timed("ray-potential-schedule", [&]() -> std::pair<bool, std::string> {
    DoubleParabolicSet dp = double_parabolic_params(s);
    cplx a = dp.params.empty() ? cplx(0.1, 0.1) : dp.params[0].a + cplx(0.3, 0.1);
    RayTrace tr = trace_dynamical_ray(s, a, Angle(Rational(1, 7)), 1e-4);
    if (tr.samples.size() < 4) return {false, "trace too short"};
    for (size_t i = 1; i < tr.samples.size(); ++i) {
      double ratio = tr.samples[i].potential / tr.samples[i - 1].potential;
      if (std::abs(ratio - 0.5) > 1e-9) return {false, "potential ratio " + format_double(ratio)};
      if (tr.samples[i].potential >= tr.samples[i - 1].potential)
        return {false, "potential not decreasing"};
    }
    return {true, std::to_string(tr.samples.size()) + " samples, ratio 1/2 exact"};
  }));

  out.push_back(timed("abel-equation", [&]() -> std::pair<bool, std::string> {
    // a parameter with a healthy chart: near the adjacent anchor 2 sqrt(lambda)
    cplx a = 1.9 * std::sqrt(s.lambda);
    double worst = max_abel_residual(s, a, 100);
    return {worst < 1e-6, "max |phi(F z) - phi(z) - 1| = " + format_double(worst)};
  }));

  out.push_back(timed("petal-boundary-critical-point", [&]() -> std::pair<bool, std::string> {
    // the model chart is normalized at its critical point: cut level 0
    ModelBasin mb(s);
    if (!mb.valid()) return {false, "model chart unavailable"};
    auto ev = mb.chart().extended_value(-0.5 * s.lambda);
    if (!ev) return {false, "no value at the critical point"};
    double r = std::abs(ev->value.real());
    return {r < 1e-6, "Re phi(crit) = " + format_double(ev->value.real())};
  }));

  out.push_back(timed("address-roundtrip", [&]() -> std::pair<bool, std::string> {
    ModelBasin mb(s);
    if (!mb.valid()) return {false, "model chart unavailable"};
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    int done = 0, tries = 0;
    while (done < 100 && tries < 3000) {
      ++tries;
      BasinAddress addr;
      addr.track = int(u(rng) * s.q) % s.q;
      addr.steps = int(u(rng) * 3.0) * s.q;
      addr.value = cplx(-0.4 - 1.2 * u(rng) - double(addr.steps) / s.q, 3.0 * (u(rng) - 0.5));
      for (int j = 0; j < addr.steps; ++j) {
        addr.sectors.push_back(((addr.track + j * s.p) % s.q + s.q) % s.q);
        addr.bits.push_back(u(rng) < 0.5 ? 0 : 1);
      }
      auto z = mb.invert(addr);
      if (!z) continue;
      auto back = mb.extend(*z);
      if (!back) continue;
      auto z2 = mb.invert(*back);
      if (!z2) continue;
      worst = std::max(worst, std::abs(*z - *z2));
      ++done;
    }
    if (done < 50) return {false, "too few invertible samples (" + std::to_string(done) + ")"};
    return {worst < 1e-8, std::to_string(done) + " round trips, worst " + format_double(worst)};
  }));

  out.push_back(timed("classify-negation-symmetry", [&]() -> std::pair<bool, std::string> {
    ClassifyContext ctx = ClassifyContext::make(s);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-2.2, 2.2);
    for (int i = 0; i < 300; ++i) {
      cplx a(u(rng), u(rng));
      ParamClass c1 = classify_param(ctx, a);
      ParamClass c2 = classify_param(ctx, -a);
      if (c1.tag != c2.tag) return {false, "tag mismatch at a = " + format_double(a.real())};
      if (c1.tag == ParamTag::Bitransitive &&
          c2.bitransitive_m != (s.q - c1.bitransitive_m) % s.q)
        return {false, "bitransitive label not negation-consistent"};
    }
    return {true, "300 samples symmetric"};
  }));

  return out;
}

}  // namespace parabolica
