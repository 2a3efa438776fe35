#include "parabolica/slice.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace parabolica {

Slice make_slice(int p, int q) {
  if (q < 1) throw std::invalid_argument("make_slice: q must be >= 1");
  if (std::gcd(((p % q) + q) % q, q) != 1)
    throw std::invalid_argument("make_slice: p/q must be reduced");
  Slice s;
  s.p = ((p % q) + q) % q;
  if (s.p == 0 && q == 1) s.p = 1;  // lambda = 1, conventionally written 1/1
  s.q = q;
  double th = 2.0 * M_PI * double(p) / double(q);
  s.lambda = cplx(std::cos(th), std::sin(th));
  return s;
}

cplx eval_f(cplx lambda, cplx a, cplx z) { return ((z + a) * z + lambda) * z; }

cplx eval_f_prime(cplx lambda, cplx a, cplx z) { return lambda + (2.0 * a + 3.0 * z) * z; }

cplx eval_family(const Slice& s, const FamilyParam& par, cplx z) {
  switch (par.fam) {
    case Family::F_a:
      return eval_f(s.lambda, par.value, z);
    case Family::G_c: {
      if (par.value == cplx(0.0)) throw std::invalid_argument("eval_family: c must be nonzero");
      cplx u = 1.0 / par.value;
      return s.lambda * z * (1.0 - 0.5 * (1.0 + u) * z + (u / 3.0) * z * z);
    }
    case Family::GHAT_s: {
      if (par.value == cplx(0.0)) throw std::invalid_argument("eval_family: s must be nonzero");
      cplx sv = par.value;
      return s.lambda * z * (1.0 - 0.5 * (sv + 1.0 / sv) * z + z * z / 3.0);
    }
  }
  return {};
}

cplx sqrt3lambda(const Slice& s) { return std::sqrt(3.0 * s.lambda); }

cplx sigma_of_s(const Slice& s, cplx sval) {
  return -sqrt3lambda(s) * (sval + 1.0 / sval) * 0.5;
}

FamilyParam convert_param(const Slice& s, const FamilyParam& from, Family to, int branch) {
  if (from.fam == to) throw std::invalid_argument("convert_param: source equals target");
  // Route everything through GHAT_s.
  cplx sval;
  switch (from.fam) {
    case Family::GHAT_s:
      sval = from.value;
      break;
    case Family::G_c:
      sval = std::sqrt(from.value);
      if (branch < 0) sval = -sval;
      break;
    case Family::F_a: {
      // sigma(s) = a  <=>  s + 1/s = -2a / sqrt(3 lambda)
      cplx w = -from.value / sqrt3lambda(s);  // (s + 1/s)/2
      cplx disc = std::sqrt(w * w - 1.0);
      cplx s1 = w + disc, s2 = w - disc;
      sval = (branch >= 0) == (std::abs(s1) >= std::abs(s2)) ? s1 : s2;
      break;
    }
  }
  if (sval == cplx(0.0)) throw std::domain_error("convert_param: degenerate s = 0");
  FamilyParam out;
  out.fam = to;
  switch (to) {
    case Family::GHAT_s: out.value = sval; break;
    case Family::G_c: out.value = sval * sval; break;
    case Family::F_a: out.value = sigma_of_s(s, sval); break;
  }
  return out;
}

CriticalData critical_points(const Slice& s, cplx a, const std::vector<cplx>& path) {
  CriticalData out;
  const cplx branch_pt_sq = 3.0 * s.lambda;  // zeros of a^2 - 3 lambda at a = +-sqrt(3 lambda)
  const double tol = 1e-12 * (1.0 + std::abs(a));

  std::vector<cplx> way = path;
  if (way.empty()) {
    cplx base = cplx(10.0 * (1.0 + std::abs(s.lambda)), 0.0);
    way = {base, a};
  }

  // Continue w = sqrt(a^2 - 3 lambda) from the base, where w ~ +a.
  cplx cur = way.front();
  cplx w = std::sqrt(cur * cur - branch_pt_sq);
  if ((w - cur) != cplx(0.0) && std::abs(w - cur) > std::abs(-w - cur)) w = -w;
  for (size_t leg = 0; leg + 1 < way.size(); ++leg) {
    cplx from = way[leg], to = way[leg + 1];
    int steps = std::max<int>(8, static_cast<int>(std::ceil(std::abs(to - from) / 0.05)));
    for (int k = 1; k <= steps; ++k) {
      cplx pt = from + (to - from) * (double(k) / steps);
      cplx val = pt * pt - branch_pt_sq;
      if (std::abs(val) < 1e-10) out.branch_flagged = true;
      cplx r = std::sqrt(val);
      w = (std::abs(r - w) <= std::abs(-r - w)) ? r : -r;
    }
  }

  if (std::abs(a * a - branch_pt_sq) < 1e-10 * (1.0 + std::abs(a) * std::abs(a))) {
    out.degenerate = true;
    w = cplx(0.0);
  }
  out.c_plus = (-a + w) / 3.0;
  out.c_minus = (-a - w) / 3.0;
  out.v_plus = eval_f(s.lambda, a, out.c_plus);
  out.v_minus = eval_f(s.lambda, a, out.c_minus);
  (void)tol;
  return out;
}

}  // namespace parabolica
