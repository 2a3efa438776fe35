#pragma once

#include <optional>

#include "parabolica/slice.hpp"

namespace parabolica {

/// Boettcher coordinate at infinity for f(z) = lambda z + a z^2 + z^3,
/// normalized phi(z) = z + o(1). Works for arbitrary (lambda, a), including
/// the pure-power reference lambda = a = 0.
struct BoettcherMap {
  cplx lambda{0.0, 0.0};
  cplx a{0.0, 0.0};
  double top_potential = 8.0;  // potential above which the tail expansion is trusted
  double r_out = 1.0e4;        // modulus above which phi is within o(1) of z
  int max_iter = 8192;

  BoettcherMap() = default;
  BoettcherMap(cplx lambda_, cplx a_) : lambda(lambda_), a(a_) {}
  BoettcherMap(const Slice& s, cplx a_) : lambda(s.lambda), a(a_) {}

  cplx f(cplx z) const { return ((z + a) * z + lambda) * z; }
  cplx fp(cplx z) const { return lambda + (2.0 * a + 3.0 * z) * z; }
};

/// log phi with the argument tracked continuously along the orbit:
/// theta_{k+1} = 3 theta_k + Arg(f(z_k)/z_k^3), started at the principal
/// argument of z. green = Re log phi is the potential.
struct LogPhi {
  double green = 0.0;
  double theta = 0.0;  // unwrapped Im log phi
  int escape_steps = 0;
};

std::optional<LogPhi> log_boettcher(const BoettcherMap& m, cplx z);

/// phi(z) for escaping z; nullopt when the orbit stays bounded in budget.
std::optional<cplx> boettcher_eval(const BoettcherMap& m, cplx z);

/// Green potential: lim 3^{-k} log|f^k(z)|, and 0 for orbits that stay
/// bounded within the iteration budget.
double green_potential(const BoettcherMap& m, cplx z);

/// Inverse of phi in the top zone: w with potential >= top_potential.
/// target_log = log w (principal-type, arg in radians).
cplx phi_top_inverse(const BoettcherMap& m, cplx target_log);

/// log phi_top(z) for |z| in the top zone, principal branch.
cplx log_phi_top(const BoettcherMap& m, cplx z);

}  // namespace parabolica
