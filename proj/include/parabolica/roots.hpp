#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "parabolica/polynomial.hpp"

namespace parabolica {

struct RootSet {
  std::vector<cplx> roots;
  std::vector<double> residuals;  // |p(root)| at each entry
  bool converged = true;
  int sweeps = 0;
};

/// All complex roots by Aberth-Ehrlich simultaneous iteration. Initial
/// guesses sit on a circle of radius 1 + max|c_i/c_lead|^(1/deg); at the
/// degrees arising here (<= 2q and the 3^q fixed-point polynomials) no
/// restarts are needed.
inline RootSet poly_roots(const Poly& p_in, int max_sweeps = 500, bool trim = true) {
  Poly p = trim ? p_in.trimmed() : p_in;
  const int n = p.degree();
  if (n < 1) throw std::invalid_argument("poly_roots: degree must be >= 1");

  const cplx lead = p.coeff(n);
  double ratio = 0.0;
  for (int k = 0; k < n; ++k) ratio = std::max(ratio, std::abs(p.coeff(k) / lead));
  const double radius = 1.0 + std::pow(ratio, 1.0 / n);

  std::vector<cplx> z(n);
  for (int i = 0; i < n; ++i) {
    double th = 2.0 * M_PI * (i + 0.25) / n + 0.42;  // offset breaks symmetry locks
    z[i] = radius * cplx(std::cos(th), std::sin(th));
  }

  const Poly dp = p.derivative();
  const double tol = 1e-14;
  RootSet out;
  bool done = false;
  int sweep = 0;
  for (; sweep < max_sweeps && !done; ++sweep) {
    done = true;
    for (int i = 0; i < n; ++i) {
      auto [pv, dpv] = p.eval2(z[i]);
      if (std::abs(pv) == 0.0) continue;
      cplx newton = (dpv != cplx(0.0)) ? pv / dpv : cplx(1e-3, 1e-3);
      cplx sum(0.0);
      for (int j = 0; j < n; ++j)
        if (j != i) {
          cplx d = z[i] - z[j];
          if (std::abs(d) < 1e-30) d = cplx(1e-30, 0.0);
          sum += 1.0 / d;
        }
      cplx denom = 1.0 - newton * sum;
      cplx step = (std::abs(denom) > 1e-30) ? newton / denom : newton;
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = newton;
      z[i] -= step;
      if (std::abs(step) > tol * (1.0 + std::abs(z[i]))) done = false;
    }
  }
  out.sweeps = sweep;
  out.converged = done;
  out.roots = z;
  out.residuals.resize(n);
  double scale = 1.0 + p.max_abs();
  for (int i = 0; i < n; ++i) {
    out.residuals[i] = std::abs(p.eval(z[i]));
    if (out.residuals[i] > 1e-10 * scale) out.converged = false;
  }
  return out;
}

}  // namespace parabolica
