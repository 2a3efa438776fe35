#include "parabolica/rays.hpp"

#include <algorithm>
#include <cmath>

#include "parabolica/roots.hpp"

namespace parabolica {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// The three solutions of f(w) = rhs, f = lambda z + a z^2 + z^3, by Cardano
// with a Newton polish. Closed form: the magnitudes here reach e^24 where a
// simultaneous iteration with relative trimming would misbehave.
std::vector<cplx> pullback_roots(cplx lambda, cplx a, cplx rhs) {
  const cplx B = a, C = lambda, D = -rhs;
  const cplx p = C - B * B / 3.0;
  const cplx q = 2.0 * B * B * B / 27.0 - B * C / 3.0 + D;
  cplx disc = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
  cplx u3 = -q / 2.0 + disc;
  if (std::abs(u3) < std::abs(-q / 2.0 - disc)) u3 = -q / 2.0 - disc;
  std::vector<cplx> roots;
  if (std::abs(u3) < 1e-300) {
    // p ~ q ~ 0: triple root
    roots.assign(3, -B / 3.0);
  } else {
    cplx u = std::pow(u3, 1.0 / 3.0);
    const cplx omega(-0.5, std::sqrt(3.0) / 2.0);
    for (int k = 0; k < 3; ++k) {
      cplx uk = u;
      for (int i = 0; i < k; ++i) uk *= omega;
      cplx vk = (std::abs(uk) > 1e-300) ? -p / (3.0 * uk) : cplx(0.0);
      roots.push_back(uk + vk - B / 3.0);
    }
  }
  for (cplx& z : roots) {
    for (int it = 0; it < 3; ++it) {
      cplx val = ((z + B) * z + C) * z + D;
      cplx der = C + (2.0 * B + 3.0 * z) * z;
      if (std::abs(der) < 1e-300) break;
      z -= val / der;
    }
  }
  return roots;
}

// Newton refinement of a single preimage near `seed`; falls back to the full
// root set when the iteration leaves the seed's neighborhood.
cplx pullback_nearest(cplx lambda, cplx a, cplx rhs, cplx seed, bool& ambiguous, double& margin) {
  cplx z = seed;
  bool ok = false;
  for (int it = 0; it < 30; ++it) {
    cplx val = ((z + a) * z + lambda) * z - rhs;
    cplx der = lambda + (2.0 * a + 3.0 * z) * z;
    if (std::abs(der) < 1e-18) break;
    cplx step = val / der;
    z -= step;
    if (std::abs(step) < 1e-14 * (1.0 + std::abs(z))) {
      ok = true;
      break;
    }
  }
  std::vector<cplx> roots = pullback_roots(lambda, a, rhs);
  // distances from the seed decide the branch; the Newton result just
  // polishes whichever root we select
  std::sort(roots.begin(), roots.end(),
            [&](cplx x, cplx y) { return std::abs(x - seed) < std::abs(y - seed); });
  double d1 = std::abs(roots[0] - seed);
  double d2 = roots.size() > 1 ? std::abs(roots[1] - seed) : 1e300;
  margin = d2 - d1;
  ambiguous = (d2 < 1.6 * d1) && d1 > 1e-12;
  if (ok && std::abs(z - roots[0]) < 1e-9 * (1.0 + std::abs(z))) return z;
  return roots[0];
}

// Pullback chain for one sample: depth i holds the point at potential 3^i t
// on the ray of angle 3^i theta.
struct Chain {
  double t = 0.0;
  std::vector<cplx> pts;  // pts[0] is the sample itself
};

// Build the chain for potential t. `ref` is the previous sample's chain
// (potential 2t), used for branch selection below the argument-safe zone.
bool build_chain(const BoettcherMap& m, const Angle& theta, double t, const Chain* ref,
                 double arg_safe_potential, Chain& out, cplx& crash_witness) {
  int k = 0;
  double T = t;
  while (T < m.top_potential) {
    T *= 3.0;
    ++k;
  }
  // exact top angle
  Rational top_angle = (theta.value * pow_int(3, k)).mod1();
  double ang = kTwoPi * top_angle.to_double();
  if (ang > M_PI) ang -= kTwoPi;
  cplx z = phi_top_inverse(m, cplx(T, ang));

  out.t = t;
  out.pts.assign(k + 1, cplx(0.0));
  out.pts[k] = z;
  for (int i = k - 1; i >= 0; --i) {
    double ti = t * std::pow(3.0, i);
    cplx seed;
    bool have_seed = false;
    if (ref && i < static_cast<int>(ref->pts.size())) {
      seed = ref->pts[i];
      have_seed = true;
    }
    if (!have_seed || ti >= arg_safe_potential) {
      // argument predictor: at comfortable potentials the Boettcher angle is
      // close to the geometric one
      Rational angle_i = (theta.value * pow_int(3, i)).mod1();
      double th = kTwoPi * angle_i.to_double();
      seed = std::exp(cplx(ti, th));
      if (have_seed && ti < arg_safe_potential) seed = ref->pts[i];
      if (!have_seed) {
        // select among all roots by argument match
        std::vector<cplx> roots = pullback_roots(m.lambda, m.a, z);
        double best = 1e300;
        cplx pick = roots[0];
        for (cplx r : roots) {
          double d = std::remainder(std::arg(r) - th, kTwoPi);
          if (std::abs(d) < best) {
            best = std::abs(d);
            pick = r;
          }
        }
        out.pts[i] = pick;
        z = pick;
        continue;
      }
    }
    bool ambiguous = false;
    double margin = 0.0;
    cplx w = pullback_nearest(m.lambda, m.a, z, seed, ambiguous, margin);
    if (ambiguous && margin < 1e-8) {
      crash_witness = w;
      return false;
    }
    out.pts[i] = w;
    z = w;
  }
  return true;
}

}  // namespace

std::vector<cplx> periodic_points(const Slice& s, cplx a, int n) {
  // roots of f^n(z) - z via polynomial composition
  Poly f(std::vector<cplx>{cplx(0.0), s.lambda, a, cplx(1.0)});
  Poly fn = f;
  for (int i = 1; i < n; ++i) {
    // compose fn(f): Horner in Poly
    Poly acc(fn.coeffs().back());
    for (int k = fn.degree() - 1; k >= 0; --k) acc = acc * f + Poly(fn.coeff(k));
    fn = acc;
  }
  Poly eq = fn - Poly::variable();
  RootSet rs = poly_roots(eq, 800, /*trim=*/false);
  return rs.roots;
}

RayTrace trace_dynamical_ray(const Slice& s, cplx a, const Angle& t, double target_potential,
                             const RayOptions& opt) {
  BoettcherMap m(s, a);
  m.top_potential = opt.top_potential;
  RayTrace out;
  out.angle = t;

  const double arg_safe = std::max(2.0, 1.3 * std::log(2.0 + std::abs(a) + std::abs(s.lambda)));
  Chain cur, prev;
  cplx crash;
  double tp = opt.top_potential;
  int steps = 0;
  bool landed = false;

  if (!build_chain(m, t, tp, nullptr, arg_safe, cur, crash)) {
    out.status = RayStatus::Crashed;
    out.crash_witness = crash;
    return out;
  }
  out.samples.push_back({tp, cur.pts[0]});

  while (tp > target_potential && steps < opt.max_total_steps) {
    ++steps;
    double tn = tp * 0.5;
    prev = cur;
    Chain next;
    if (!build_chain(m, t, tn, &prev, arg_safe, next, crash)) {
      // one halving of the internal step: try an intermediate level first
      Chain mid;
      if (build_chain(m, t, tp * 0.75, &prev, arg_safe, mid, crash) &&
          build_chain(m, t, tn, &mid, arg_safe, next, crash)) {
        // recovered
      } else {
        out.status = RayStatus::Crashed;
        out.crash_witness = crash;
        return out;
      }
    }
    cur = next;
    tp = tn;
    out.samples.push_back({tp, cur.pts[0]});

    // landing detection: the last `landing_window` samples contract
    int w = opt.landing_window;
    if (static_cast<int>(out.samples.size()) > w) {
      bool contracted = true;
      for (int i = static_cast<int>(out.samples.size()) - w; i < static_cast<int>(out.samples.size()); ++i)
        if (std::abs(out.samples[i].z - out.samples[i - 1].z) > opt.landing_tol) contracted = false;
      if (contracted) {
        landed = true;
        break;
      }
    }
  }

  out.terminal = out.samples.back().z;
  if (landed) {
    out.status = RayStatus::Landed;
  } else if (tp <= target_potential) {
    out.status = RayStatus::ReachedTarget;
  } else {
    out.status = RayStatus::BudgetExceeded;
    return out;
  }

  if (opt.refine_landing) {
    LandingInfo li = refine_periodic_landing(s, a, t, out);
    if (li.resolved) {
      out.terminal_gap = std::abs(out.terminal - li.point);
      out.terminal = li.point;
      if (out.status == RayStatus::ReachedTarget) out.status = RayStatus::Landed;
    }
  }
  return out;
}

LandingInfo refine_periodic_landing(const Slice& s, cplx a, const Angle& t, const RayTrace& trace) {
  LandingInfo out;
  if (trace.samples.empty()) return out;
  AnglePeriod ap = angle_period(t, 3);
  if (ap.preperiod != 0 || ap.period > 6) return out;  // only periodic angles are refined here
  const int k = ap.period;

  // Backward stabilization along the ray: pull the deepest sample back by
  // f^{-k}, branch nearest to the current point. Repelling landing points
  // stabilize geometrically; the parabolic point is approached slowly along
  // a locked direction. Either way the limit is a fixed point of f^k.
  cplx z = trace.samples.back().z;
  cplx prev = z;
  for (int it = 0; it < 3000; ++it) {
    cplx w = z;
    for (int j = 0; j < k; ++j) {
      bool amb = false;
      double margin = 0.0;
      w = pullback_nearest(s.lambda, a, w, w, amb, margin);
      if (amb && margin < 1e-10) return out;
    }
    prev = z;
    z = w;
    if (std::abs(z - prev) < 1e-13) break;
  }

  // cluster the fixed points (multiple roots come out as tight clusters from
  // the solver) and pick the decisively nearest cluster
  std::vector<cplx> fixed = periodic_points(s, a, k);
  std::vector<cplx> clusters;
  std::vector<int> weight;
  for (cplx r : fixed) {
    bool merged = false;
    for (size_t i = 0; i < clusters.size(); ++i) {
      // multiplicity 2q+1 roots scatter like eps^{1/(2q+1)} ~ 1e-3
      if (std::abs(r - clusters[i]) < 2e-2) {
        clusters[i] = (clusters[i] * double(weight[i]) + r) / double(weight[i] + 1);
        ++weight[i];
        merged = true;
        break;
      }
    }
    if (!merged) {
      clusters.push_back(r);
      weight.push_back(1);
    }
  }
  double d1 = 1e300, d2 = 1e300;
  cplx best(0.0);
  for (cplx r : clusters) {
    double d = std::abs(r - z);
    if (d < d1) {
      d2 = d1;
      d1 = d;
      best = r;
    } else if (d < d2) {
      d2 = d;
    }
  }
  // accept when the backward orbit is decisively closer to one cluster; the
  // parabolic creep keeps a margin because the merged fixed point sits where
  // the orbit is headed while all others stay at unit distance
  if (d2 > 2.5 * d1 || d1 < 1e-8) {
    out.resolved = true;
    out.point = best;
    out.confidence = d2 - d1;
  }
  return out;
}

RayTrace trace_parameter_ray(const Slice& s, const Angle& t, double target_potential, int sector,
                             const RayOptions& opt) {
  // Continuation in the parameter plane: at each potential level solve
  // v_-(a) = (point of the dynamical ray of f_a at that level), the ray
  // point coming from the same pullback chains as the dynamical tracer.
  // This keeps every branch decision geometric; Newton never fights the
  // multivaluedness of log Phi.
  RayTrace out;
  out.parameter_plane = true;
  out.angle = t;
  const double th = kTwoPi * t.to_double();

  auto seed_for = [&](double pot) {
    // Phi(a) ~ 4 a^3 / 27 at infinity: cube-root seeds select the component.
    cplx lg = (cplx(pot, th) - std::log(cplx(4.0 / 27.0))) / 3.0;
    return std::exp(lg + cplx(0.0, kTwoPi * sector / 3.0));
  };

  auto vminus = [&](cplx aa, cplx& wb) {
    cplx v = aa * aa - 3.0 * s.lambda;
    cplx w = std::sqrt(v);
    if (std::abs(w - wb) > std::abs(-w - wb)) w = -w;
    wb = w;
    cplx cm = (-aa - w) / 3.0;
    return eval_f(s.lambda, aa, cm);
  };

  struct Level {
    cplx a;
    cplx wb;
    Chain chain;
  };

  auto solve_level = [&](double tlevel, Level start, const Chain* refc,
                         bool* branch_flag) -> std::optional<Level> {
    cplx acur = start.a;
    cplx wcur = start.wb;
    Chain best_chain;
    double best_h = 1e300;
    cplx best_a = acur, best_w = wcur;
    for (int it = 0; it < opt.max_newton; ++it) {
      BoettcherMap m(s, acur);
      m.top_potential = opt.top_potential;
      double asafe = std::max(2.0, 1.3 * std::log(2.0 + std::abs(acur) + std::abs(s.lambda)));
      cplx crash;
      Chain ch;
      if (!build_chain(m, t, tlevel, refc, asafe, ch, crash)) {
        if (branch_flag) *branch_flag = true;
        return std::nullopt;
      }
      cplx wb = wcur;
      cplx val = vminus(acur, wb);
      cplx H = val - ch.pts[0];
      double scale = 1.0 + std::abs(ch.pts[0]);
      if (std::abs(H) < best_h) {
        best_h = std::abs(H);
        best_a = acur;
        best_w = wb;
        best_chain = ch;
      }
      if (std::abs(H) < 1e-11 * scale) return Level{acur, wb, std::move(ch)};
      double h = std::max(1e-7 * std::abs(acur), 1e-10);
      BoettcherMap mx(s, acur + cplx(h, 0.0));
      mx.top_potential = opt.top_potential;
      BoettcherMap my(s, acur + cplx(0.0, h));
      my.top_potential = opt.top_potential;
      Chain chx, chy;
      cplx cr2;
      if (!build_chain(mx, t, tlevel, refc, asafe, chx, cr2)) return std::nullopt;
      if (!build_chain(my, t, tlevel, refc, asafe, chy, cr2)) return std::nullopt;
      cplx wbx = wcur, wby = wcur;
      cplx Hx = vminus(acur + cplx(h, 0.0), wbx) - chx.pts[0];
      cplx Hy = vminus(acur + cplx(0.0, h), wby) - chy.pts[0];
      cplx dx = (Hx - H) / h;
      cplx dy = (Hy - H) / h;
      cplx deriv = 0.5 * (dx + cplx(0.0, -1.0) * dy);
      if (std::abs(deriv) < 1e-18) break;
      cplx step = H / deriv;
      double cap = 0.5 * (1.0 + std::abs(acur));
      if (std::abs(step) > cap) step *= cap / std::abs(step);
      acur -= step;
      wcur = wb;
      if (!std::isfinite(acur.real()) || std::abs(acur) > 1e4) return std::nullopt;
    }
    if (best_h < 1e-8) return Level{best_a, best_w, std::move(best_chain)};
    return std::nullopt;
  };

  // top-level start from the asymptotic seed
  Level cur;
  cur.a = seed_for(opt.top_potential);
  {
    cplx v = cur.a * cur.a - 3.0 * s.lambda;
    cur.wb = std::sqrt(v);
    if (std::abs(cur.wb - cur.a) > std::abs(-cur.wb - cur.a)) cur.wb = -cur.wb;
  }
  double tp = opt.top_potential;
  auto top = solve_level(tp, cur, nullptr, nullptr);
  if (!top) {
    out.status = RayStatus::Crashed;
    out.note = "top-level seeding failed";
    return out;
  }
  cur = *top;
  out.samples.push_back({tp, cur.a});

  int steps = 0;
  bool landed = false;
  cplx a_prev = cur.a;
  bool flagged = false;
  while (tp > target_potential && steps < opt.max_total_steps) {
    ++steps;
    double tn = tp * 0.5;
    Level pred = cur;
    pred.a = cur.a + (cur.a - a_prev);  // linear predictor in the level index
    a_prev = cur.a;
    auto next = solve_level(tn, pred, &cur.chain, &flagged);
    if (!next) {
      // one intermediate level, then retry
      auto mid = solve_level(tp * 0.75, cur, &cur.chain, &flagged);
      if (mid) next = solve_level(tn, *mid, &mid->chain, &flagged);
      if (!next) {
        out.status = RayStatus::BudgetExceeded;
        out.note = flagged ? "branch jump flagged near potential " + std::to_string(tp)
                           : "continuation stalled at potential " + std::to_string(tp);
        out.terminal = out.samples.empty() ? cplx(0.0) : out.samples.back().z;
        return out;
      }
    }
    cur = *next;
    tp = tn;
    out.samples.push_back({tp, cur.a});

    int w = opt.landing_window;
    if (static_cast<int>(out.samples.size()) > w) {
      bool contracted = true;
      for (int i = static_cast<int>(out.samples.size()) - w; i < static_cast<int>(out.samples.size()); ++i)
        if (std::abs(out.samples[i].z - out.samples[i - 1].z) > opt.landing_tol) contracted = false;
      if (contracted) {
        landed = true;
        break;
      }
    }
  }

  out.terminal = out.samples.empty() ? cplx(0.0) : out.samples.back().z;
  out.status = landed ? RayStatus::Landed : RayStatus::ReachedTarget;

  if (opt.refine_landing && !landed) {
    // Descend beyond the requested target to feed the terminal estimate;
    // approaches to the double parabolics creep like (log 1/t)^{-1/2}.
    std::vector<RaySample> extra = out.samples;
    double tq = tp;
    Level deep = cur;
    cplx dprev = deep.a;
    while (tq > opt.floor_potential && static_cast<int>(extra.size()) < 1200) {
      double tn = tq * 0.5;
      Level pred = deep;
      pred.a = deep.a + (deep.a - dprev);
      dprev = deep.a;
      auto next = solve_level(tn, pred, &deep.chain, nullptr);
      if (!next) break;
      deep = *next;
      tq = tn;
      extra.push_back({tq, deep.a});
      size_t n = extra.size();
      if (n > 6 && std::abs(extra[n - 1].z - extra[n - 2].z) < 1e-10) {
        out.terminal = extra.back().z;
        out.status = RayStatus::Landed;
        out.terminal_gap = 0.0;
        return out;
      }
    }
    if (extra.size() > 40) {
      size_t n = extra.size();
      size_t lo = n - std::min<size_t>(n, 400);
      double best_res = 1e300;
      cplx best_a = extra.back().z;
      for (double C : {0.0, 5.0, 10.0, 20.0, 40.0, 80.0, 160.0}) {
        double M[4][4] = {};
        cplx rhs[4] = {};
        for (size_t i = lo; i < n; ++i) {
          double L = -std::log(extra[i].potential);
          if (L + C <= 1.0) continue;
          double x = 1.0 / std::sqrt(L + C);
          double b[4] = {1.0, x, x * x, x * x * x};
          for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) M[r][c] += b[r] * b[c];
            rhs[r] += b[r] * extra[i].z;
          }
        }
        double A[4][4];
        cplx R[4] = {rhs[0], rhs[1], rhs[2], rhs[3]};
        bool ok = true;
        for (int r = 0; r < 4; ++r)
          for (int c = 0; c < 4; ++c) A[r][c] = M[r][c];
        cplx sol[4];
        for (int col = 0; col < 4 && ok; ++col) {
          int piv = col;
          for (int r = col + 1; r < 4; ++r)
            if (std::abs(A[r][col]) > std::abs(A[piv][col])) piv = r;
          if (std::abs(A[piv][col]) < 1e-14) {
            ok = false;
            break;
          }
          std::swap(A[col], A[piv]);
          std::swap(R[col], R[piv]);
          for (int r = col + 1; r < 4; ++r) {
            double fac = A[r][col] / A[col][col];
            for (int c = col; c < 4; ++c) A[r][c] -= fac * A[col][c];
            R[r] -= fac * R[col];
          }
        }
        if (!ok) continue;
        for (int r = 3; r >= 0; --r) {
          cplx acc = R[r];
          for (int c = r + 1; c < 4; ++c) acc -= A[r][c] * sol[c];
          sol[r] = acc / A[r][r];
        }
        double res = 0.0;
        for (size_t i = lo; i < n; ++i) {
          double L = -std::log(extra[i].potential);
          if (L + C <= 1.0) continue;
          double x = 1.0 / std::sqrt(L + C);
          cplx fit = sol[0] + x * (sol[1] + x * (sol[2] + x * sol[3]));
          res += std::norm(fit - extra[i].z);
        }
        if (res < best_res) {
          best_res = res;
          best_a = sol[0];
        }
      }
      out.terminal = best_a;
      out.terminal_gap = std::abs(best_a - extra.back().z);
      out.status = RayStatus::Landed;
      out.note = "terminal by gate extrapolation";
    }
  }
  return out;
}

}  // namespace parabolica
