#include "parabolica/locus.hpp"

#include <algorithm>
#include <cmath>

namespace parabolica {

ClassifyContext ClassifyContext::make(const Slice& s) {
  ClassifyContext ctx;
  ctx.slice = s;
  ctx.A_poly = parabolic_coefficient(s, Family::F_a).coeff;
  ctx.dp_radius = 4.0 * (1.0 + std::sqrt(std::abs(s.lambda)));
  return ctx;
}

namespace {

// Direction index of z among the q attracting directions of z + A z^{q+1}.
int direction_index(cplx z, cplx dir0, int q) {
  double best = 1e300;
  int bi = 0;
  for (int j = 0; j < q; ++j) {
    cplx d = dir0 * std::polar(1.0, 2.0 * M_PI * j / q);
    double dd = std::abs(std::remainder(std::arg(z) - std::arg(d), 2.0 * M_PI));
    if (dd < best) {
      best = dd;
      bi = j;
    }
  }
  return bi;
}

struct OrbitProbe {
  bool escaped = false;
  int escape_n = 0;
  bool entered = false;
  int entry_n = 0;       // first iterate index inside the deep petal zone
  int entry_dir = 0;     // direction index at entry
  int lock_n = -1;       // first index from which the sector pattern holds
  bool hit_zero = false;
  int zero_n = 0;
};

// Iterate one critical orbit, recording escape / petal entry / the first
// index where the direction pattern epsilon_{n+1} = epsilon_n + p locks in.
OrbitProbe probe_orbit(const Slice& s, cplx a, cplx z0, cplx A, cplx dir0, double R_escape,
                       int escape_budget, int parabolic_budget, double entry_threshold) {
  OrbitProbe out;
  const int q = s.q;
  cplx z = z0;
  int last_dir = -1;
  int consistent_since = 0;
  const int budget = escape_budget + parabolic_budget;
  for (int n = 0; n < budget; ++n) {
    double az = std::abs(z);
    if (az > R_escape) {
      out.escaped = true;
      out.escape_n = n;
      return out;
    }
    if (az < 1e-13) {
      out.hit_zero = true;
      out.zero_n = n;
      // a finite orbit landing exactly on the fixed point: treat as entry
      out.entered = true;
      out.entry_n = n;
      out.entry_dir = last_dir < 0 ? 0 : (last_dir + s.p) % q;
      out.lock_n = consistent_since;
      return out;
    }
    int dir = direction_index(z, dir0, q);
    if (last_dir >= 0 && dir != (last_dir + s.p) % q) consistent_since = n;
    last_dir = dir;
    if (az < 0.5) {
      cplx zq(1.0);
      for (int i = 0; i < q; ++i) zq *= z;
      cplx u = -1.0 / (double(q) * A * zq);
      if (u.real() > entry_threshold) {
        out.entered = true;
        out.entry_n = n;
        out.entry_dir = dir;
        out.lock_n = consistent_since;
        return out;
      }
    }
    z = eval_f(s.lambda, a, z);
  }
  return out;
}

}  // namespace

ParamClass classify_param(const ClassifyContext& ctx, cplx a, const ClassifyBudget& budget) {
  const Slice& s = ctx.slice;
  ParamClass out;

  cplx A = ctx.A_poly.eval(a);
  CriticalData cd = critical_points(s, a);

  const double R_escape = std::max(10.0, std::abs(a) + 2.0);

  // escape test first (cheap budget)
  if (std::abs(A) < budget.dp_near_tol && std::abs(a) < ctx.dp_radius) {
    out.tag = ParamTag::DoubleParabolicNear;
    return out;
  }

  cplx dirq = -std::conj(A) / std::abs(A);
  cplx dir0 = std::polar(1.0, std::arg(dirq) / double(s.q));

  const int pb = budget.parabolic_per_q * s.q;
  OrbitProbe plus = probe_orbit(s, a, cd.c_plus, A, dir0, R_escape, budget.escape, pb,
                                budget.entry_threshold);
  if (plus.escaped) {
    out.tag = ParamTag::Exterior;
    out.escape_iterations = plus.escape_n;
    return out;
  }
  OrbitProbe minus = probe_orbit(s, a, cd.c_minus, A, dir0, R_escape, budget.escape, pb,
                                 budget.entry_threshold);
  if (minus.escaped) {
    out.tag = ParamTag::Exterior;
    out.escape_iterations = minus.escape_n;
    return out;
  }
  out.petal_entry_plus = plus.entered ? plus.entry_n : -1;
  out.petal_entry_minus = minus.entered ? minus.entry_n : -1;
  if (!plus.entered || !minus.entered) {
    out.tag = ParamTag::Undecided;
    return out;
  }
  if (minus.hit_zero && s.q > 1) {
    out.tag = ParamTag::MisiurewiczParabolicNear;
    return out;
  }

  // Sector track of each orbit: direction at entry rolled back to index 0.
  auto track_of = [&](const OrbitProbe& pr) {
    int t = pr.entry_dir;
    for (int i = 0; i < pr.entry_n % s.q; ++i) t = ((t - s.p) % s.q + s.q) % s.q;
    return t;
  };
  int track_plus = track_of(plus);
  int track_minus = track_of(minus);
  int m = ((track_minus - track_plus) % s.q + s.q) % s.q;

  // The depth: first iterate index from which the rotation pattern holds.
  int depth = minus.lock_n;
  if (depth <= 0) {
    if (m == 0)
      out.tag = ParamTag::Adjacent;
    else {
      out.tag = ParamTag::Bitransitive;
      out.bitransitive_m = m;
    }
  } else {
    out.tag = ParamTag::Capture;
    out.capture_depth = depth;
  }
  return out;
}

TypeClassification classify_double_parabolic_type(const Slice& s, cplx a_dp) {
  TypeClassification out;
  const int q = s.q;
  RayOptions opt;
  opt.landing_window = 12;
  std::vector<int> landing;
  for (int k = 0; k <= q; ++k) {
    RotationCycle th = theta_m(s.p, q, k);
    RayTrace tr = trace_dynamical_ray(s, a_dp, th.base_angle(), 1e-9, opt);
    if (tr.status != RayStatus::Landed && tr.status != RayStatus::ReachedTarget) continue;
    if (std::abs(tr.terminal) < 1e-3) landing.push_back(k);
  }
  out.landing_cycles = landing;
  if (landing.size() != 2) {
    out.message = "expected exactly two landing cycles, found " + std::to_string(landing.size());
    return out;
  }
  int k0 = landing[0], k1 = landing[1];
  if (k1 != k0 + 1) {
    out.message = "landing cycles not consecutive";
    return out;
  }
  out.ok = true;
  out.m = k0;
  return out;
}

void assign_types(DoubleParabolicSet& dp) {
  const Slice& s = dp.slice;
  std::vector<DoubleParabolicParam> typed(dp.params.size());
  std::vector<bool> used(dp.params.size(), false);
  bool all_ok = true;
  for (auto& par : dp.params) {
    TypeClassification tc = classify_double_parabolic_type(s, par.a);
    if (!tc.ok || tc.m < 0 || tc.m >= static_cast<int>(dp.params.size()) || used[tc.m]) {
      all_ok = false;
      par.type_m = tc.ok ? tc.m : -1;
      continue;
    }
    par.type_m = tc.m;
    typed[tc.m] = par;
    used[tc.m] = true;
  }
  if (all_ok) {
    dp.params = typed;
  } else {
    dp.ok = false;
    dp.message = "type classification incomplete";
  }
}

void assign_wake_angles(DoubleParabolicSet& dp, double target_potential) {
  const Slice& s = dp.slice;
  const int q = s.q;
  RayOptions opt;
  for (int k = 0; k <= q; ++k) {
    RotationCycle th = theta_m(s.p, q, k);
    for (const Angle& ang : th.angles) {
      for (int sector = 0; sector < 3; ++sector) {
        RayTrace tr = trace_parameter_ray(s, ang, target_potential, sector, opt);
        if (tr.samples.empty()) continue;
        if (tr.status != RayStatus::Landed && tr.status != RayStatus::ReachedTarget) continue;
        // nearest double parabolic parameter
        double best = 1e300;
        DoubleParabolicParam* who = nullptr;
        for (auto& par : dp.params) {
          double d = std::abs(par.a - tr.terminal);
          if (d < best) {
            best = d;
            who = &par;
          }
        }
        // the four designated rays land at the parameter; anything else
        // terminates elsewhere
        if (who && best < 5e-3) {
          bool dup = false;
          for (const auto& have : who->wake_angles)
            if (have == ang) dup = true;
          if (!dup) who->wake_angles.push_back(ang);
        }
      }
    }
  }
}

}  // namespace parabolica
