#include "parabolica/fatou.hpp"

#include <cmath>

#include "parabolica/parabolic.hpp"

namespace parabolica {

namespace {

Series map_series(const Slice& s, const FatouChart::MapRef& map, int order) {
  if (map.quadratic_model) {
    Series f(order);
    f.c[1] = s.lambda;
    if (order >= 2) f.c[2] = cplx(1.0);
    return f;
  }
  FamilyParam par{map.fam, map.param};
  Series f(order);
  switch (map.fam) {
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
  return f;
}

// Compositional inverse of h = z + c z^j by fixed-point correction; a few
// composes instead of the order-by-order generic routine.
Series reverse_fast(const Series& h) {
  const int m = h.order();
  Series id = Series::identity(m);
  Series g = id + id - h;  // z - c z^j to first order
  for (int it = 0; it < 6; ++it) {
    Series err = series_compose(h, g) - id;
    double sz = 0.0;
    for (auto& e : err.c) sz = std::max(sz, std::abs(e));
    if (sz < 1e-15) break;
    g = g - err;
  }
  return g;
}

// One conjugation step of the normal form: kill the z^{q+j} coefficient of
// F = z + A z^{q+1} + ... with h = z + c z^j. The linearization gives
// c = -coeff / (A (j - q - 1)) and the quadratic remainder only touches
// strictly higher orders, so a single pass suffices (a second one mops up
// roundoff).
void kill_coefficient(Series& F, int q, int j, Series& H_accum) {
  const int m = F.order();
  const int target = q + j;
  if (target > m) return;
  cplx A = F.c[q + 1];
  for (int pass = 0; pass < 2; ++pass) {
    cplx coeff = F.c[target];
    if (std::abs(coeff) < 1e-15) break;
    cplx c = -coeff / (A * cplx(double(j - q - 1), 0.0));
    Series h = Series::identity(m);
    h.c[j] = c;
    F = series_compose(h, series_compose(F, reverse_fast(h)));
    H_accum = series_compose(h, H_accum);
  }
}

}  // namespace

PetalChain petal_chain(int p, int q, int m, int depth) {
  PetalChain out;
  out.m = ((m % q) + q) % q;
  for (int n = depth; n >= -depth; --n) {
    // n p + k = m (mod q)
    int k = ((out.m - n * p) % q + q) % q;
    out.labels.push_back({n, k});
  }
  return out;
}

cplx FatouChart::apply(cplx z) const {
  if (map_.quadratic_model) return slice_.lambda * z + z * z;
  return eval_family(slice_, {map_.fam, map_.param}, z);
}

cplx FatouChart::apply_return(cplx z) const {
  for (int i = 0; i < q_; ++i) z = apply(z);
  return z;
}

cplx FatouChart::eval_H(cplx z) const {
  // H(z) = z + H_[0] z^2 + H_[1] z^3 + ...
  cplx acc(0.0);
  for (int k = static_cast<int>(H_.size()) - 1; k >= 0; --k) acc = (acc + H_[k]) * z;
  return (acc + 1.0) * z;
}

cplx FatouChart::eval_H_prime(cplx z) const {
  cplx acc(0.0);
  for (int k = static_cast<int>(H_.size()) - 1; k >= 0; --k)
    acc = acc * z + H_[k] * cplx(double(k + 2), 0.0);
  return acc * z + 1.0;
}

cplx FatouChart::apply_prime(cplx z) const {
  if (map_.quadratic_model) return slice_.lambda + 2.0 * z;
  switch (map_.fam) {
    case Family::F_a:
      return slice_.lambda + (2.0 * map_.param + 3.0 * z) * z;
    case Family::G_c: {
      cplx u = 1.0 / map_.param;
      return slice_.lambda * (1.0 - (1.0 + u) * z + u * z * z);
    }
    case Family::GHAT_s: {
      cplx sv = map_.param;
      return slice_.lambda * (1.0 - (sv + 1.0 / sv) * z + z * z);
    }
  }
  return {};
}

cplx FatouChart::u_coord(cplx z) const {
  cplx h = eval_H(z);
  cplx hq(1.0);
  for (int i = 0; i < q_; ++i) hq *= h;
  return -1.0 / (double(q_) * A_ * hq);
}

int FatouChart::direction_index(cplx z) const {
  double best = 1e300;
  int arg_best = 0;
  for (int j = 0; j < q_; ++j) {
    double d = std::abs(std::remainder(std::arg(z) - std::arg(attracting_direction(j)), 2.0 * M_PI));
    if (d < best) {
      best = d;
      arg_best = j;
    }
  }
  return arg_best;
}

cplx FatouChart::attracting_direction(int j) const {
  return dir0_ * std::polar(1.0, 2.0 * M_PI * double(j) / double(q_));
}

std::optional<FatouChart::ValDer> FatouChart::phi_raw_d(cplx z) const {
  // March the orbit of the return map, reading the Abel pair at dyadic
  // checkpoints N, 2N, 4N, 8N. The full normal form leaves an integer-power
  // drift tail, so a Richardson table in 1/N converges like N^{-4}. The
  // derivative rides along as the orbit product of f'.
  const long N0 = abel_base_;
  cplx vals[4], ders[4];
  cplx w = z;
  cplx D(1.0, 0.0);
  long settle = 0;
  const long settle_max = 400000;
  while (settle < settle_max) {
    if (std::abs(w) < 0.75) {
      cplx u = u_coord(w);
      if (u.real() > entry_threshold_) break;
    }
    for (int i = 0; i < q_; ++i) {
      D *= apply_prime(w);
      w = apply(w);
    }
    ++settle;
    if (!std::isfinite(w.real()) || std::abs(w) > 1e12) return std::nullopt;
  }
  if (settle >= settle_max) return std::nullopt;

  long n = 0;
  long target = N0;
  for (int cp = 0; cp < 4; ++cp) {
    while (n < target) {
      for (int i = 0; i < q_; ++i) {
        D *= apply_prime(w);
        w = apply(w);
      }
      ++n;
      if (!(std::abs(w) < 0.9)) return std::nullopt;  // must stay in the petal
    }
    cplx h = eval_H(w);
    cplx hq(1.0);
    for (int i = 0; i < q_; ++i) hq *= h;
    cplx u = -1.0 / (double(q_) * A_ * hq);
    cplx du = eval_H_prime(w) / (A_ * hq * h);  // u' = H'/(A H^{q+1})
    vals[cp] = u - cplx(double(n + settle), 0.0) - b_ * std::log(u);
    ders[cp] = (cplx(1.0) - b_ / u) * du * D;
    target *= 2;
  }

  // Vandermonde solve in x = 1/N for the constant term, values and
  // derivatives sharing the same weights.
  double xs[4];
  for (int i = 0; i < 4; ++i) xs[i] = 1.0 / (double(N0) * std::pow(2.0, i));
  double V[4][4];
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) V[r][c] = std::pow(xs[r], c);
  cplx rhs_v[4] = {vals[0], vals[1], vals[2], vals[3]};
  cplx rhs_d[4] = {ders[0], ders[1], ders[2], ders[3]};
  for (int col = 0; col < 4; ++col) {
    int piv = col;
    for (int r = col + 1; r < 4; ++r)
      if (std::abs(V[r][col]) > std::abs(V[piv][col])) piv = r;
    std::swap(V[col], V[piv]);
    std::swap(rhs_v[col], rhs_v[piv]);
    std::swap(rhs_d[col], rhs_d[piv]);
    for (int r = col + 1; r < 4; ++r) {
      double fac = V[r][col] / V[col][col];
      for (int c = col; c < 4; ++c) V[r][c] -= fac * V[col][c];
      rhs_v[r] -= fac * rhs_v[col];
      rhs_d[r] -= fac * rhs_d[col];
    }
  }
  cplx sol_v[4], sol_d[4];
  for (int r = 3; r >= 0; --r) {
    cplx acc_v = rhs_v[r], acc_d = rhs_d[r];
    for (int c = r + 1; c < 4; ++c) {
      acc_v -= V[r][c] * sol_v[c];
      acc_d -= V[r][c] * sol_d[c];
    }
    sol_v[r] = acc_v / V[r][r];
    sol_d[r] = acc_d / V[r][r];
  }
  return ValDer{sol_v[0], sol_d[0]};
}

std::optional<cplx> FatouChart::phi_raw(cplx z) const {
  auto vd = phi_raw_d(z);
  if (!vd) return std::nullopt;
  return vd->val;
}

std::optional<cplx> FatouChart::phi(cplx z) const {
  auto raw = phi_raw(z);
  if (!raw) return std::nullopt;
  return *raw - offset_;
}

std::optional<FatouChart::ValDer> FatouChart::phi_d(cplx z) const {
  auto vd = phi_raw_d(z);
  if (!vd) return std::nullopt;
  return ValDer{vd->val - offset_, vd->der};
}

std::optional<cplx> FatouChart::phi_hat_deep(cplx z) const { return phi_raw(z); }

std::optional<cplx> FatouChart::phi_inverse(cplx xi) const {
  // Seed deep, where the u-asymptotics are accurate, then continue along a
  // straight segment in the Fatou plane down to xi, warm-starting Newton.
  auto seed_at = [&](cplx target) {
    cplx u = target + offset_;
    cplx powq = -1.0 / (double(q_) * A_ * u);
    double r = std::pow(std::abs(powq), 1.0 / double(q_));
    double th = std::arg(powq) / double(q_);
    cplx z(0.0);
    double best = 1e300;
    for (int j = 0; j < q_; ++j) {
      cplx cand = std::polar(r, th + 2.0 * M_PI * j / double(q_));
      double d = std::abs(std::remainder(std::arg(cand) - std::arg(dir0_), 2.0 * M_PI));
      if (d < best) {
        best = d;
        z = cand;
      }
    }
    return z;
  };
  auto newton = [&](cplx z, cplx target) -> std::optional<cplx> {
    for (int it = 0; it < 40; ++it) {
      auto vd = phi_d(z);
      if (!vd) return std::nullopt;
      cplx diff = vd->val - target;
      if (std::abs(diff) < 1e-10) return z;
      if (std::abs(vd->der) < 1e-18) return std::nullopt;
      cplx step = diff / vd->der;
      if (std::abs(step) > 0.35 * std::abs(z)) step *= 0.35 * std::abs(z) / std::abs(step);
      z -= step;
    }
    auto val = phi(z);
    if (val && std::abs(*val - target) < 1e-8) return z;
    return std::nullopt;
  };

  const double deep = std::max(12.0, entry_threshold_ * 0.5);
  if (xi.real() >= deep) return newton(seed_at(xi), xi);
  cplx start(deep, xi.imag());
  auto z = newton(seed_at(start), start);
  if (!z) return std::nullopt;
  // continuation from the deep anchor to xi
  int legs = std::max(1, static_cast<int>(std::ceil(std::abs(xi - start) / 1.5)));
  for (int k = 1; k <= legs; ++k) {
    cplx target = start + (xi - start) * (double(k) / legs);
    z = newton(*z, target);
    if (!z) return std::nullopt;
  }
  return z;
}

std::optional<FatouChart::ExtendedValue> FatouChart::extended_value(cplx z, int budget) const {
  if (budget < 0) budget = 10000 * q_;
  cplx w = z;
  int steps = 0;
  while (steps < budget) {
    if (std::abs(w) < 0.5) {
      cplx u = u_coord(w);
      if (u.real() > entry_threshold_) break;
    }
    w = apply(w);
    ++steps;
    if (!std::isfinite(w.real()) || std::abs(w) > 1e10) return std::nullopt;
  }
  if (steps >= budget) return std::nullopt;
  // synchronize to sector 0
  int d = direction_index(w);
  int sync = 0;
  while (d != 0 && sync < q_) {
    w = apply(w);
    ++sync;
    d = (d + p_) % q_;
  }
  if (d != 0) return std::nullopt;
  auto raw = phi_raw(w);
  if (!raw) return std::nullopt;
  ExtendedValue out;
  out.steps_to_sync = steps + sync;
  out.value = *raw - offset_ - cplx(double(steps + sync) / double(q_), 0.0);
  // the sector of z itself in the synchronized labeling
  int entry_dir = direction_index(w);  // = 0 now
  (void)entry_dir;
  int track = (0 - (steps + sync) % q_) * p_;  // walk the rotation backwards
  // solving track via: sector advances by +p each step and ends at 0
  int t0 = 0;
  for (int i = 0; i < (steps + sync) % q_; ++i) t0 = ((t0 - p_) % q_ + q_) % q_;
  out.track = t0;
  (void)track;
  return out;
}

std::optional<FatouChart> FatouChart::build(const Slice& s, MapRef map, cplx normalization_point) {
  FatouChart ch;
  ch.slice_ = s;
  ch.map_ = map;
  ch.p_ = s.p % s.q;
  ch.q_ = s.q;

  const int order = 3 * s.q + 5;
  Series f = map_series(s, map, order);
  Series F = series_self_iterate(f, s.q);
  ch.A_ = F.c[s.q + 1];
  double scale = 0.0;
  for (auto& c : F.c) scale = std::max(scale, std::abs(c));
  if (std::abs(ch.A_) < 1e-8 * (1.0 + scale)) return std::nullopt;  // double parabolic

  // Normal form: kill every z^{q+j} except the resonant z^{2q+1}, so the
  // Abel drift has an integer-power tail and the Richardson table below can
  // run in 1/N.
  Series H = Series::identity(order);
  Series Fn = F;
  for (int j = 2; j + s.q <= order; ++j) {
    if (j == s.q + 1) continue;  // resonance
    kill_coefficient(Fn, s.q, j, H);
  }
  cplx gamma = Fn.c[2 * s.q + 1];
  ch.b_ = cplx(double(s.q + 1) / (2.0 * s.q), 0.0) - gamma / (double(s.q) * ch.A_ * ch.A_);
  ch.H_.assign(order - 1, cplx(0.0));
  for (int k = 2; k <= order; ++k) ch.H_[k - 2] = H.c[k];

  // attracting directions: q A v^q < 0
  cplx root = std::pow(-1.0 / ch.A_ * std::abs(ch.A_), 1.0) / std::abs(ch.A_);
  // v^q = -|A|/A * t for t > 0: one direction is (conj(A)/|A| * -1)^{1/q}
  cplx dirq = -std::conj(ch.A_) / std::abs(ch.A_);
  ch.dir0_ = std::polar(1.0, std::arg(dirq) / double(ch.q_));
  (void)root;

  // Sector labels: sector 0 is the basin containing the normalization
  // point, so its entry direction is rolled back by the orbit rotation.
  {
    cplx w = normalization_point;
    int budget = 200000;
    int steps = 0;
    while (steps < budget) {
      if (std::abs(w) < 0.5 && ch.u_coord(w).real() > ch.entry_threshold_) break;
      w = ch.apply(w);
      ++steps;
      if (!std::isfinite(w.real()) || std::abs(w) > 1e10) return std::nullopt;
    }
    if (steps >= budget) return std::nullopt;
    int d = ch.direction_index(w);
    int track = ((d - steps * ch.p_) % ch.q_ + ch.q_) % ch.q_;
    ch.dir0_ = ch.attracting_direction(track);
  }

  ch.norm_point_ = normalization_point;
  ch.offset_ = cplx(0.0);
  auto ev = ch.extended_value(normalization_point);
  if (!ev) return std::nullopt;
  ch.offset_ = ev->value;
  return ch;
}

std::optional<FatouChart> FatouChart::model(const Slice& s) {
  MapRef mr;
  mr.quadratic_model = true;
  mr.lambda = s.lambda;
  return build(s, mr, -0.5 * s.lambda);
}

}  // namespace parabolica
