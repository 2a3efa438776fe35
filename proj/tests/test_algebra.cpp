#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "doctest.h"
#include "parabolica/rational.hpp"
#include "parabolica/roots.hpp"
#include "parabolica/series.hpp"

using namespace parabolica;

namespace {

// Independent oracle: full polynomial composition by convolution, truncated
// afterwards. Never touches the series code path it checks.
std::vector<cplx> compose_bruteforce(const std::vector<cplx>& outer,
                                     const std::vector<cplx>& inner, int order) {
  std::vector<cplx> acc(order + 1, cplx(0.0));
  std::vector<cplx> power(order + 1, cplx(0.0));
  power[0] = 1.0;
  for (size_t k = 0; k < outer.size(); ++k) {
    for (int j = 0; j <= order; ++j) acc[j] += outer[k] * power[j];
    // power *= inner (truncated)
    std::vector<cplx> next(order + 1, cplx(0.0));
    for (int i = 0; i <= order; ++i)
      for (size_t j = 0; j < inner.size() && i + (int)j <= order; ++j)
        next[i + j] += power[i] * inner[j];
    power = next;
  }
  return acc;
}

Series make_series(std::vector<cplx> c) { return Series(std::move(c)); }

}  // namespace

TEST_CASE("rational arithmetic is exact and reduced") {
  Rational a(3, 12);
  CHECK(a.num() == 1);
  CHECK(a.den() == 4);
  Rational b(-2, -8);
  CHECK(b == a);
  Rational c(1, -3);
  CHECK(c.den() == 3);
  CHECK(c.num() == -1);

  std::mt19937_64 rng(0);
  std::uniform_int_distribution<long long> d(-1000, 1000);
  for (int i = 0; i < 500; ++i) {
    long long an = d(rng), ad = d(rng), bn = d(rng), bd = d(rng);
    if (ad == 0 || bd == 0) continue;
    Rational x(an, ad), y(bn, bd);
    Rational sum = x + y;
    // cross-multiplied recomputation must agree exactly
    CHECK(sum * Rational(ad) * Rational(bd) == Rational(an * bd + bn * ad));
  }
  CHECK((Rational(7, 3).mod1()) == Rational(1, 3));
  CHECK((Rational(-1, 3).mod1()) == Rational(2, 3));
  CHECK(Rational::parse("5/15") == Rational(1, 3));
}

TEST_CASE("series_compose matches the spec examples and the brute-force oracle") {
  // identity composition
  Series id = make_series({0, 1, 0, 0, 0});
  Series zz = make_series({0, 1, 1, 0, 0});
  Series r = series_compose(id, zz);
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(r.c[k] - zz.c[k]) < 1e-15);

  // (z+z^2) o (z+z^2) = z + 2z^2 + 2z^3 + z^4 at order 4
  Series self = series_compose(zz, zz);
  std::vector<cplx> want = {0, 1, 2, 2, 1};
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(self.c[k] - want[k]) < 1e-14);

  // odd map
  Series zc = make_series({0, 1, 0, 1});
  Series mz = make_series({0, -1, 0, 0});
  Series odd = series_compose(zc, mz);
  std::vector<cplx> wodd = {0, -1, 0, -1};
  for (int k = 0; k <= 3; ++k) CHECK(std::abs(odd.c[k] - wodd[k]) < 1e-15);

  // randomized against the oracle
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    int order = 6;
    std::vector<cplx> oc(order + 1), ic(order + 1);
    ic[0] = 0.0;
    for (int k = 0; k <= order; ++k) oc[k] = cplx(u(rng), u(rng));
    for (int k = 1; k <= order; ++k) ic[k] = cplx(u(rng), u(rng));
    Series a(oc), b(ic);
    Series got = series_compose(a, b);
    auto want2 = compose_bruteforce(oc, ic, order);
    for (int k = 0; k <= order; ++k) CHECK(std::abs(got.c[k] - want2[k]) < 1e-12);
  }

  CHECK_THROWS(series_compose(zz, make_series({0.5, 1, 0, 0, 0})));
}

TEST_CASE("series_self_iterate examples") {
  Series zz = make_series({0, 1, 1, 0, 0});
  Series it2 = series_self_iterate(zz, 2);
  std::vector<cplx> want = {0, 1, 2, 2, 1};
  for (int k = 0; k <= 4; ++k) CHECK(std::abs(it2.c[k] - want[k]) < 1e-14);

  cplx lam = std::polar(1.0, 2.0 * M_PI / 3.0);
  Series rot = make_series({0, lam, 0, 0});
  Series rot3 = series_self_iterate(rot, 3);
  CHECK(std::abs(rot3.c[1] - cplx(1.0)) < 1e-14);
  CHECK(std::abs(rot3.c[2]) < 1e-14);

  // f = -z + a z^2 + z^3, f^2 = z - 2(1+a^2) z^3 + O(z^4)
  cplx a(0.3, 0.7);
  Series f = make_series({0, -1, a, 1, 0, 0});
  Series f2 = series_self_iterate(f, 2);
  CHECK(std::abs(f2.c[1] - 1.0) < 1e-14);
  CHECK(std::abs(f2.c[2]) < 1e-14);
  CHECK(std::abs(f2.c[3] - (-2.0 * (1.0 + a * a))) < 1e-13);

  // semigroup property, coefficientwise to 1e-12 relative
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<cplx> fc(8, cplx(0.0));
    fc[1] = std::polar(1.0, u(rng) * M_PI);
    for (int k = 2; k <= 7; ++k) fc[k] = cplx(u(rng), u(rng));
    Series g(fc);
    Series lhs = series_self_iterate(g, 5);
    Series rhs = series_compose(series_self_iterate(g, 2), series_self_iterate(g, 3));
    double scale = 0.0;
    for (auto& x : lhs.c) scale = std::max(scale, std::abs(x));
    for (int k = 0; k <= 7; ++k) CHECK(std::abs(lhs.c[k] - rhs.c[k]) < 1e-12 * (1.0 + scale));
  }
}

TEST_CASE("series_reverse inverts tangent-to-identity series") {
  Series h = make_series({0, 1, 0.3, cplx(-0.2, 0.1), 0.05, 0});
  Series g = series_reverse(h);
  Series comp = series_compose(g, h);
  CHECK(std::abs(comp.c[1] - 1.0) < 1e-13);
  for (int k = 2; k <= 5; ++k) CHECK(std::abs(comp.c[k]) < 1e-12);
}

TEST_CASE("poly_roots solves the spec cases") {
  {
    RootSet rs = poly_roots(Poly(std::vector<cplx>{1, 0, 1}));  // z^2 + 1
    REQUIRE(rs.roots.size() == 2);
    CHECK(rs.converged);
    double d1 = std::min(std::abs(rs.roots[0] - cplx(0, 1)), std::abs(rs.roots[0] - cplx(0, -1)));
    double d2 = std::min(std::abs(rs.roots[1] - cplx(0, 1)), std::abs(rs.roots[1] - cplx(0, -1)));
    CHECK(d1 < 1e-10);
    CHECK(d2 < 1e-10);
    CHECK(std::abs(rs.roots[0] - rs.roots[1]) > 1.0);
  }
  {
    RootSet rs = poly_roots(Poly(std::vector<cplx>{-1, 0, 0, 1}));  // z^3 - 1
    REQUIRE(rs.roots.size() == 3);
    for (cplx r : rs.roots) CHECK(std::abs(std::pow(r, 3) - 1.0) < 1e-10);
  }
  {
    RootSet rs = poly_roots(Poly(std::vector<cplx>{2, 0, 2}));  // 2z^2 + 2 (A_{1/2} shape)
    for (cplx r : rs.roots) CHECK(std::abs(r * r + 1.0) < 1e-10);
  }
}

TEST_CASE("poly_roots residual bound and recovery of well-separated roots") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<cplx> roots;
    while (roots.size() < 6) {
      cplx cand(u(rng), u(rng));
      bool ok = true;
      for (cplx r : roots)
        if (std::abs(r - cand) < 0.35) ok = false;
      if (ok) roots.push_back(cand);
    }
    Poly p = poly_from_roots(roots);
    RootSet rs = poly_roots(p);
    REQUIRE(rs.roots.size() == roots.size());
    double scale = 1.0 + p.max_abs();
    for (size_t i = 0; i < rs.roots.size(); ++i) {
      CHECK(std::abs(p.eval(rs.roots[i])) <= std::max(rs.residuals[i], 1e-10 * scale));
      double best = 1e300;
      for (cplx r : roots) best = std::min(best, std::abs(r - rs.roots[i]));
      CHECK(best < 1e-9);
    }
  }
}

TEST_CASE("poly trim threshold recovers degrees from noisy data") {
  Poly p(std::vector<cplx>{1.0, 2.0, cplx(0, 3), 1e-13, 1e-14});
  CHECK(p.trimmed().degree() == 2);
}
