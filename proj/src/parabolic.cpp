#include "parabolica/parabolic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parabolica {

namespace {

PolySeries family_series_poly(const Slice& s, Family fam, int order) {
  PolySeries f(order);
  switch (fam) {
    case Family::F_a:
      // lambda z + a z^2 + z^3, coefficients in a
      f.c[1] = Poly(s.lambda);
      if (order >= 2) f.c[2] = Poly::variable();
      if (order >= 3) f.c[3] = Poly(cplx(1.0));
      break;
    case Family::G_c:
      // lambda z (1 - (1+u)/2 z + u/3 z^2), coefficients in u = 1/c
      f.c[1] = Poly(s.lambda);
      if (order >= 2) f.c[2] = Poly(std::vector<cplx>{-0.5 * s.lambda, -0.5 * s.lambda});
      if (order >= 3) f.c[3] = Poly(std::vector<cplx>{cplx(0.0), s.lambda / 3.0});
      break;
    default:
      throw std::invalid_argument("parabolic_coefficient: GHAT_s has no polynomial parameter");
  }
  return f;
}

}  // namespace

ParabolicCoefficient parabolic_coefficient(const Slice& s, Family fam, int order) {
  if (order < 0) order = s.q + 3;  // one guard coefficient beyond z^{q+2}
  if (order < s.q + 1) throw std::invalid_argument("parabolic_coefficient: order too small");
  PolySeries f = family_series_poly(s, fam, order);
  PolySeries fq = series_self_iterate(f, s.q);

  ParabolicCoefficient out;
  out.slice = s;
  out.family = fam;
  out.coeff = fq.c[s.q + 1].trimmed();

  // Fatou-Leau: f^q = z + A z^{q+1} + O(z^{q+2}); the intermediate
  // coefficients must vanish identically in the parameter.
  double worst = (fq.c[1] - Poly(cplx(1.0))).max_abs();
  for (int k = 2; k <= s.q; ++k) worst = std::max(worst, fq.c[k].max_abs());
  out.max_intermediate = worst;
  double scale = 1.0 + out.coeff.max_abs();
  if (worst > 1e-10 * scale)
    throw std::runtime_error("parabolic_coefficient: intermediate coefficients do not vanish; "
                             "slice data inconsistent");
  return out;
}

Series family_iterate_series(const Slice& s, const FamilyParam& par, int n, int order) {
  Series f(order);
  switch (par.fam) {
    case Family::F_a:
      f.c[1] = s.lambda;
      if (order >= 2) f.c[2] = par.value;
      if (order >= 3) f.c[3] = cplx(1.0);
      break;
    case Family::G_c: {
      cplx u = 1.0 / par.value;
      f.c[1] = s.lambda;
      if (order >= 2) f.c[2] = -0.5 * s.lambda * (1.0 + u);
      if (order >= 3) f.c[3] = s.lambda * u / 3.0;
      break;
    }
    case Family::GHAT_s: {
      cplx sv = par.value;
      f.c[1] = s.lambda;
      if (order >= 2) f.c[2] = -0.5 * s.lambda * (sv + 1.0 / sv);
      if (order >= 3) f.c[3] = s.lambda / 3.0;
      break;
    }
  }
  return series_self_iterate(f, n);
}

DoubleParabolicSet double_parabolic_params(const Slice& s) {
  DoubleParabolicSet out;
  out.slice = s;

  ParabolicCoefficient A = parabolic_coefficient(s, Family::F_a);
  ParabolicCoefficient C = parabolic_coefficient(s, Family::G_c);
  out.a_coefficient = A.coeff;
  out.u_coefficient = C.coeff;
  out.degree_u = C.coeff.degree();
  out.degree_a_observed = A.coeff.degree();
  if (out.degree_u != s.q) {
    out.ok = false;
    out.message = "degree of C_{p/q}(1/c) != q after trim";
    return out;
  }

  RootSet uroots = poly_roots(C.coeff);
  if (!uroots.converged) {
    out.ok = false;
    out.message = "root finder did not converge on C_{p/q}";
    return out;
  }

  // Transport: u = 1/c, s = +-sqrt(c), a = sigma(s); sigma(s) = sigma(1/s)
  // collapses the pair, negation of s negates a.
  std::vector<cplx> candidates;
  for (cplx u : uroots.roots) {
    if (std::abs(u) < 1e-14) continue;
    cplx c = 1.0 / u;
    cplx sv = std::sqrt(c);
    candidates.push_back(sigma_of_s(s, sv));
    candidates.push_back(sigma_of_s(s, -sv));
  }
  std::vector<cplx> dedup;
  for (cplx a : candidates) {
    bool merged = false;
    for (cplx& b : dedup)
      if (std::abs(a - b) < 1e-7 * (1.0 + std::abs(a))) {
        b = 0.5 * (a + b);
        merged = true;
        break;
      }
    if (!merged) dedup.push_back(a);
  }
  if (static_cast<int>(dedup.size()) != s.q) {
    out.ok = false;
    out.message = "transported root count != q after dedup (" + std::to_string(dedup.size()) + ")";
    return out;
  }

  // Polish each candidate on A_{p/q} and verify.
  Poly dA = A.coeff.derivative();
  for (cplx& a : dedup) {
    for (int it = 0; it < 50; ++it) {
      cplx v = A.coeff.eval(a);
      cplx d = dA.eval(a);
      if (std::abs(d) < 1e-14) break;
      cplx step = v / d;
      a -= step;
      if (std::abs(step) < 1e-15 * (1.0 + std::abs(a))) break;
    }
  }
  for (cplx a : dedup) {
    DoubleParabolicParam dp;
    dp.a = a;
    dp.residual_A = std::abs(A.coeff.eval(a));
    if (dp.residual_A >= 1e-8) {
      out.ok = false;
      out.message = "|A| residual too large at transported root";
    }
    out.params.push_back(dp);
  }

  // Cross-check against the independent A-side roots.
  if (A.coeff.degree() >= 1) {
    RootSet aroots = poly_roots(A.coeff);
    double worst = 0.0;
    for (const auto& dp : out.params) {
      double best = 1e300;
      for (cplx r : aroots.roots) best = std::min(best, std::abs(r - dp.a));
      worst = std::max(worst, best);
    }
    out.cross_check = worst;
    if (worst > 1e-7) {
      out.ok = false;
      out.message = "A-roots and transported C-roots disagree";
    }
  }

  // Stable order before types are known: by argument, then modulus.
  std::sort(out.params.begin(), out.params.end(), [](const auto& x, const auto& y) {
    double ax = std::arg(x.a), ay = std::arg(y.a);
    if (std::abs(ax - ay) > 1e-12) return ax < ay;
    return std::abs(x.a) < std::abs(y.a);
  });
  return out;
}

}  // namespace parabolica
