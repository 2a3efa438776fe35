#include <cmath>

#include "doctest.h"
#include "parabolica/covering.hpp"
#include "parabolica/locus.hpp"
#include "parabolica/render.hpp"
#include "parabolica/special_curve.hpp"

using namespace parabolica;

TEST_CASE("classify_param spec examples at lambda = 1") {
  Slice s = make_slice(1, 1);
  ClassifyContext ctx = ClassifyContext::make(s);
  CHECK(classify_param(ctx, cplx(3.0)).tag == ParamTag::Exterior);
  CHECK(classify_param(ctx, cplx(2.0)).tag == ParamTag::Adjacent);
  CHECK(classify_param(ctx, cplx(0.0)).tag == ParamTag::DoubleParabolicNear);
  // exterior detection is fast for a = 3
  CHECK(classify_param(ctx, cplx(3.0)).escape_iterations < 8);
}

TEST_CASE("exterior classification agrees with positive green potential") {
  Slice s = make_slice(1, 2);
  ClassifyContext ctx = ClassifyContext::make(s);
  for (double x = -2.5; x <= 2.5; x += 0.5) {
    for (double y = -2.5; y <= 2.5; y += 0.5) {
      cplx a(x, y);
      ParamClass pc = classify_param(ctx, a);
      if (pc.tag != ParamTag::Exterior && pc.tag != ParamTag::Undecided) {
        CriticalData cd = critical_points(s, a);
        BoettcherMap m(s, a);
        CHECK(green_potential(m, cd.v_minus) == 0.0);
        CHECK(green_potential(m, cd.v_plus) == 0.0);
      }
    }
  }
}

TEST_CASE("double parabolic types for lambda = -1 are {0, 1} with negation rule") {
  Slice s = make_slice(1, 2);
  DoubleParabolicSet dp = double_parabolic_params(s);
  REQUIRE(dp.ok);
  assign_types(dp);
  REQUIRE(dp.ok);
  REQUIRE(dp.params.size() == 2);
  CHECK(dp.params[0].type_m == 0);
  CHECK(dp.params[1].type_m == 1);
  // negation: type(-a) = q - 1 - type(a)
  CHECK(std::abs(dp.params[0].a + dp.params[1].a) < 1e-8);
}

TEST_CASE("type classification for lambda = 1 is trivially m = 0") {
  Slice s = make_slice(1, 1);
  TypeClassification tc = classify_double_parabolic_type(s, cplx(0.0));
  REQUIRE(tc.ok);
  CHECK(tc.m == 0);
}

TEST_CASE("render determinism and rotation symmetry on a small grid") {
  Slice s = make_slice(1, 1);
  Window win;
  win.width = 5.0;
  LocusImage img1 = render_locus(s, win, 64, {}, 3);
  LocusImage img2 = render_locus(s, win, 64, {}, 7);
  CHECK(encode_ppm(img1) == encode_ppm(img2));

  int agree = 0, total = 0;
  for (int y = 0; y < 64; ++y)
    for (int x = 0; x < 64; ++x) {
      ++total;
      if (img1.code(x, y) == img1.code(63 - x, 63 - y)) ++agree;
    }
  CHECK(double(agree) / total >= 0.995);
}

TEST_CASE("uniform exterior window far from the locus") {
  Slice s = make_slice(1, 1);
  Window win;
  win.center_re = 40.0;
  win.width = 2.0;
  LocusImage img = render_locus(s, win, 16, {}, 2);
  for (auto code : img.codes) CHECK(code == uint8_t(ParamTag::Exterior));
}

TEST_CASE("special curve passes the critical-degeneracy point and is symmetric") {
  Slice s = make_slice(1, 1);
  SpecialCurveApprox curve = special_curve(s, 0, 21);
  REQUIRE(curve.points.size() >= 5);
  // residuals small on all returned samples
  for (double r : curve.residuals) CHECK(r < 1e-6);
  // tau = 0 sample close to sqrt(3 lambda) (critical points coincide there)
  double best = 1e300;
  for (cplx a : curve.points)
    best = std::min({best, std::abs(a - std::sqrt(cplx(3.0))), std::abs(a + std::sqrt(cplx(3.0)))});
  CHECK(best < 5e-2);
  // endpoints approach the double parabolic a = 0: distances decrease along the tail
  double d_first = std::abs(curve.points.front());
  double d_mid = std::abs(curve.points[curve.points.size() / 2]);
  CHECK(d_first < d_mid);
}

TEST_CASE("psi is injective on fixed-seed samples in one component") {
  Slice s = make_slice(1, 1);
  Covering cov(s);
  REQUIRE(cov.valid());
  std::vector<cplx> pts;
  std::vector<cplx> images;
  for (int i = 0; i < 12; ++i) {
    cplx a = cplx(2.0, 0.0) + 0.25 * std::polar(1.0, 2.0 * M_PI * i / 12.0);
    auto z = cov.psi(a);
    if (!z) continue;
    pts.push_back(a);
    images.push_back(*z);
  }
  REQUIRE(images.size() >= 8);
  for (size_t i = 0; i < images.size(); ++i)
    for (size_t j = i + 1; j < images.size(); ++j)
      CHECK(std::abs(images[i] - images[j]) > 1e-6);
}

TEST_CASE("covering round trip and fiber pair on one sample") {
  Slice s = make_slice(1, 1);
  Covering cov(s);
  REQUIRE(cov.valid());
  Covering::Sample smp = cov.eval(cplx(1.9, 0.15));
  REQUIRE(smp.ok);
  auto fr = cov.fibers(smp.z);
  REQUIRE(fr.ok);
  CHECK(fr.fibers.size() == 2);
  CHECK(std::abs(fr.fibers[0] - fr.fibers[1]) > 1e-6);
  for (double r : fr.residuals) CHECK(r < 1e-6);
  double best = std::min(std::abs(fr.fibers[0] - smp.a), std::abs(fr.fibers[1] - smp.a));
  CHECK(best < 1e-6);
}
