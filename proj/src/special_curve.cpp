#include "parabolica/special_curve.hpp"

#include <cmath>

#include "parabolica/fatou.hpp"
#include "parabolica/parabolic.hpp"
#include "parabolica/roots.hpp"

namespace parabolica {

namespace {

// c-plane balance: extended Fatou values of the two marked critical points
// of g_{lambda,c}. Both sit on the maximal petal boundary exactly when the
// real parts agree after the orbit shift r/q.
struct CBalance {
  bool ok = false;
  cplx diff;   // val(c) - val(1)
  int track_c = 0;
};

CBalance c_balance(const Slice& s, cplx c) {
  CBalance out;
  if (std::abs(c) < 1e-12) return out;
  FatouChart::MapRef mr;
  mr.fam = Family::G_c;
  mr.param = c;
  mr.lambda = s.lambda;
  auto chart = FatouChart::build(s, mr, cplx(1.0));
  if (!chart) return out;
  auto v1 = chart->extended_value(cplx(1.0));
  auto vc = chart->extended_value(c);
  if (!v1 || !vc) return out;
  out.ok = true;
  out.diff = vc->value - v1->value;
  out.track_c = vc->track;
  return out;
}

std::optional<cplx> solve_balance_c(const Slice& s, cplx seed, cplx target) {
  cplx c = seed;
  for (int it = 0; it < 30; ++it) {
    CBalance b = c_balance(s, c);
    if (!b.ok) return std::nullopt;
    cplx diff = b.diff - target;
    if (std::abs(diff) < 1e-8) return c;
    double h = std::max(1e-7 * std::abs(c), 1e-9);
    CBalance bx = c_balance(s, c + cplx(h, 0.0));
    CBalance by = c_balance(s, c + cplx(0.0, h));
    if (!bx.ok || !by.ok) return std::nullopt;
    cplx dx = (bx.diff - b.diff) / h;
    cplx dy = (by.diff - b.diff) / h;
    cplx deriv = 0.5 * (dx + cplx(0.0, -1.0) * dy);
    if (std::abs(deriv) < 1e-12) return std::nullopt;
    cplx step = diff / deriv;
    if (std::abs(step) > 0.15 * (1.0 + std::abs(c))) step *= 0.15 * (1.0 + std::abs(c)) / std::abs(step);
    c -= step;
    if (std::abs(c) > 50.0 || std::abs(c) < 1e-6) return std::nullopt;
  }
  return std::nullopt;
}

std::vector<cplx> dp_c_values(const Slice& s) {
  ParabolicCoefficient C = parabolic_coefficient(s, Family::G_c);
  std::vector<cplx> out;
  if (C.coeff.degree() >= 1) {
    RootSet rs = poly_roots(C.coeff);
    for (cplx u : rs.roots)
      if (std::abs(u) > 1e-12) out.push_back(1.0 / u);
  }
  return out;
}

double dist_to_set(cplx z, const std::vector<cplx>& set) {
  double best = 1e300;
  for (cplx w : set) best = std::min(best, std::abs(z - w));
  return best;
}

}  // namespace

SpecialCurveApprox special_curve(const Slice& s, int m, int samples) {
  if (samples < 2) throw std::invalid_argument("special_curve: samples must be >= 2");
  SpecialCurveApprox out;
  out.m = m;
  const int q = s.q;

  std::vector<cplx> dps = dp_c_values(s);

  // Seed near the I = 0 point. For the adjacent piece that is c = 1 where
  // the two critical points coincide; for the bitransitive pieces start
  // from a point of the component located through the a-plane labels.
  std::vector<cplx> seeds;
  if (m % q == 0 || q == 1) {
    for (double th : {0.5 * M_PI, 0.25 * M_PI, 0.75 * M_PI, -0.5 * M_PI, 0.0, M_PI})
      seeds.push_back(cplx(1.0) + 0.12 * std::polar(1.0, th));
  } else {
    // walk the unit-circle-ish region looking for a point whose balance has
    // a real shift compatible with the m-component
    for (int i = 0; i < 24; ++i) seeds.push_back(std::polar(1.0, 2.0 * M_PI * i / 24.0) * 0.8);
    for (int i = 0; i < 24; ++i) seeds.push_back(std::polar(1.0, 2.0 * M_PI * i / 24.0) * 1.25);
  }

  // The balance level set also carries the boundary arc of the petal
  // preimage disk (ending at the parameter with vanishing free critical
  // value); pick the seed whose continuation heads toward the double
  // parabolic c-values instead.
  struct Walk {
    std::vector<std::pair<double, cplx>> pts;
    double end_dp_dist = 1e300;
    double re_target = 0.0;
  };
  auto walk_from = [&](cplx c0, int dir) -> Walk {
    Walk w;
    CBalance b0 = c_balance(s, c0);
    if (!b0.ok) return w;
    // the curve lives on Re(diff) = r/q, r the orbit shift of the component
    double re_target = std::round(q * b0.diff.real()) / double(q);
    double tau = b0.diff.imag();
    auto on = solve_balance_c(s, c0, cplx(re_target, tau));
    if (!on) return w;
    cplx c = *on;
    w.pts.push_back({tau, c});
    double dtau = 0.35;
    int fails = 0;
    while (std::abs(tau) < 100.0 && static_cast<int>(w.pts.size()) < 6 * samples && fails < 18) {
      double next = tau + dir * dtau;
      auto sol = solve_balance_c(s, c, cplx(re_target, next));
      if (!sol) {
        dtau *= 0.5;
        ++fails;
        continue;
      }
      c = *sol;
      tau = next;
      w.pts.push_back({tau, c});
      dtau = std::min(dtau * 1.4, 3.0);
    }
    w.end_dp_dist = dist_to_set(c, dps);
    w.re_target = re_target;
    return w;
  };

  Walk best_up, best_down;
  for (cplx c0 : seeds) {
    Walk up = walk_from(c0, +1);
    Walk down = walk_from(c0, -1);
    if (up.pts.size() > 3 && up.end_dp_dist < best_up.end_dp_dist) best_up = up;
    if (down.pts.size() > 3 && down.end_dp_dist < best_down.end_dp_dist) best_down = down;
    if (best_up.end_dp_dist < 0.3 && best_down.end_dp_dist < 0.3) break;
  }
  if (best_up.pts.empty() && best_down.pts.empty()) {
    out.complete = false;
    out.message = "no continuation branch found";
    return out;
  }

  std::vector<std::pair<double, cplx>> merged;
  for (auto it = best_down.pts.rbegin(); it != best_down.pts.rend(); ++it) merged.push_back(*it);
  for (size_t i = 1; i < best_up.pts.size(); ++i) merged.push_back(best_up.pts[i]);
  out.complete = best_up.end_dp_dist < 0.3 && best_down.end_dp_dist < 0.3;
  if (!out.complete) out.message = "endpoints did not reach the double parabolic set";

  // Transport the c-plane polyline to the a-plane: s = sqrt(c) continued
  // along the polyline, a = sigma(s).
  const double re_target = best_up.pts.empty() ? best_down.re_target : best_up.re_target;
  cplx sprev = std::sqrt(merged.empty() ? cplx(1.0) : merged.front().second);
  for (const auto& [tau, c] : merged) {
    (void)tau;
    cplx sv = std::sqrt(c);
    if (std::abs(sv - sprev) > std::abs(-sv - sprev)) sv = -sv;
    sprev = sv;
    out.points.push_back(sigma_of_s(s, sv));
    CBalance b = c_balance(s, c);
    out.residuals.push_back(b.ok ? std::abs(b.diff.real() - re_target) : 1e300);
  }
  return out;
}

}  // namespace parabolica
