#include "parabolica/boettcher.hpp"

#include <cmath>

namespace parabolica {

namespace {

// |z| above which the multiplicative correction f(z)/z^3 = 1 + a/z + lambda/z^2
// is safely inside the principal branch.
double safe_radius(const BoettcherMap& m) {
  return 4.0 * (1.0 + std::abs(m.a) + std::abs(m.lambda));
}

}  // namespace

cplx log_phi_top(const BoettcherMap& m, cplx z) {
  // log z + sum 3^{-(k+1)} Log(1 + a/z_k + lambda/z_k^2); a handful of terms
  // suffice in the top zone because |z_k| cubes each step.
  cplx acc = std::log(z);
  cplx zk = z;
  double w = 1.0 / 3.0;
  for (int k = 0; k < 40; ++k) {
    cplx corr = 1.0 + (m.a + m.lambda / zk) / zk;
    acc += w * std::log(corr);
    if (std::abs(corr - 1.0) < 1e-18) break;
    if (std::abs(zk) > 1e102) break;  // next correction below double precision
    zk = m.f(zk);
    w /= 3.0;
  }
  return acc;
}

cplx phi_top_inverse(const BoettcherMap& m, cplx target_log) {
  cplx z = std::exp(target_log);
  for (int it = 0; it < 40; ++it) {
    cplx diff = log_phi_top(m, z) - target_log;
    // d(log phi)/dz = (1/z)(1 + O(a/z)); Newton in the log domain.
    z -= diff * z;
    if (std::abs(diff) < 1e-15) break;
  }
  return z;
}

std::optional<LogPhi> log_boettcher(const BoettcherMap& m, cplx z) {
  // The argument is tracked continuously along the orbit so that Im(log phi)
  // comes out unwrapped: theta_{k+1} = 3 theta_k + Arg(f(z_k)/z_k^3).
  const double rsafe = safe_radius(m);
  cplx zk = z;
  double theta = std::arg(z);
  int k = 0;
  for (; k < m.max_iter && std::abs(zk) <= rsafe; ++k) {
    cplx fz = m.f(zk);
    if (std::abs(fz) == 0.0) return std::nullopt;
    cplx ratio = fz / (zk * zk * zk);
    theta = 3.0 * theta + std::arg(ratio);
    zk = fz;
  }
  if (std::abs(zk) <= rsafe) return std::nullopt;  // bounded within budget

  cplx top = log_phi_top(m, zk);
  double theta_top = theta + (top.imag() - std::arg(zk));
  double outer = std::pow(3.0, -double(k));
  LogPhi out;
  out.green = outer * top.real();
  out.theta = outer * theta_top;
  out.escape_steps = k;
  return out;
}

std::optional<cplx> boettcher_eval(const BoettcherMap& m, cplx z) {
  // Track the argument continuously along the orbit so the 3^k-th root is
  // taken consistently.
  const double rsafe = safe_radius(m);
  cplx zk = z;
  double theta = std::arg(z);
  int k = 0;
  for (; k < m.max_iter && std::abs(zk) <= rsafe; ++k) {
    cplx fz = m.f(zk);
    if (std::abs(fz) == 0.0) return std::nullopt;
    cplx ratio = fz / (zk * zk * zk);
    theta = 3.0 * theta + std::arg(ratio);
    zk = fz;
  }
  if (std::abs(zk) <= rsafe) return std::nullopt;

  cplx top = log_phi_top(m, zk);
  // unwrapped imaginary part: replace the principal arg(zk) inside `top`
  // by the orbit-tracked angle
  double theta_top = theta + (top.imag() - std::arg(zk));
  double outer = std::pow(3.0, -double(k));
  cplx logphi = outer * cplx(top.real(), theta_top);
  return std::exp(logphi);
}

double green_potential(const BoettcherMap& m, cplx z) {
  auto lp = log_boettcher(m, z);
  return lp ? std::max(0.0, lp->green) : 0.0;
}

}  // namespace parabolica
