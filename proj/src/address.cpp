#include "parabolica/address.hpp"

#include <algorithm>
#include <cmath>

namespace parabolica {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

// log Boettcher coordinate of the quadratic model near infinity.
cplx model_log_phi_top(cplx lambda, cplx z) {
  cplx acc = std::log(z);
  cplx zk = z;
  double w = 0.5;
  for (int k = 0; k < 60; ++k) {
    cplx corr = 1.0 + lambda / zk;
    acc += w * std::log(corr);
    if (std::abs(corr - 1.0) < 1e-18) break;
    if (std::abs(zk) > 1e150) break;
    zk = lambda * zk + zk * zk;
    w *= 0.5;
  }
  return acc;
}

cplx model_phi_top_inverse(cplx lambda, cplx target_log) {
  cplx z = std::exp(target_log);
  for (int it = 0; it < 40; ++it) {
    cplx diff = model_log_phi_top(lambda, z) - target_log;
    z -= diff * z;
    if (std::abs(diff) < 1e-15) break;
  }
  return z;
}

bool point_in_polygon(const std::vector<cplx>& poly, cplx z) {
  bool in = false;
  size_t n = poly.size();
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    double yi = poly[i].imag(), yj = poly[j].imag();
    double xi = poly[i].real(), xj = poly[j].real();
    if ((yi > z.imag()) != (yj > z.imag()) &&
        z.real() < (xj - xi) * (z.imag() - yi) / (yj - yi) + xi)
      in = !in;
  }
  return in;
}

}  // namespace

Rational BasinAddress::dyadic_mark(int j) const {
  Rational w(0);
  Rational p(1, 2);
  for (size_t i = j; i < bits.size(); ++i) {
    if (bits[i]) w += p;
    p = p * Rational(1, 2);
  }
  return w;
}

ModelRays trace_model_rays(const Slice& s, double target_potential) {
  ModelRays out;
  out.slice = s;
  std::vector<Angle> angles;
  if (s.q == 1) {
    angles.emplace_back(Rational(0));
  } else {
    auto cycles = enumerate_cycles(2, s.p, s.q);
    angles = cycles.front().angles;  // Goldberg: the cycle is unique for d = 2
  }
  std::sort(angles.begin(), angles.end());
  out.angles = angles;

  const double top = 6.0;
  for (const Angle& ang : angles) {
    std::vector<cplx> line;
    std::vector<cplx> prev_chain;
    double t = top;
    while (t > target_potential) {
      int depth = 0;
      double T = t;
      while (T < top) {
        T *= 2.0;
        ++depth;
      }
      Rational top_angle = (ang.value * pow_int(2, depth)).mod1();
      double th = kTwoPi * top_angle.to_double();
      if (th > M_PI) th -= kTwoPi;
      cplx z = model_phi_top_inverse(s.lambda, cplx(T, th));
      std::vector<cplx> chain(depth + 1);
      chain[depth] = z;
      for (int i = depth - 1; i >= 0; --i) {
        cplx disc = std::sqrt(0.25 * s.lambda * s.lambda + z);
        cplx z1 = -0.5 * s.lambda + disc, z2 = -0.5 * s.lambda - disc;
        cplx pick;
        if (i < static_cast<int>(prev_chain.size())) {
          pick = (std::abs(z1 - prev_chain[i]) < std::abs(z2 - prev_chain[i])) ? z1 : z2;
        } else {
          Rational angle_i = (ang.value * pow_int(2, i)).mod1();
          double thi = kTwoPi * angle_i.to_double();
          double d1 = std::abs(std::remainder(std::arg(z1) - thi, kTwoPi));
          double d2 = std::abs(std::remainder(std::arg(z2) - thi, kTwoPi));
          pick = d1 < d2 ? z1 : z2;
        }
        chain[i] = pick;
        z = pick;
      }
      line.push_back(chain[0]);
      prev_chain = chain;
      t *= 0.5;
    }
    std::reverse(line.begin(), line.end());  // deepest sample first
    // geometric tail toward the landing point 0 along the locked direction
    std::vector<cplx> tail;
    cplx deepest = line.front();
    for (int k = 10; k >= 1; --k) tail.push_back(deepest * double(k) / 11.0);
    std::reverse(tail.begin(), tail.end());  // larger magnitudes last
    std::vector<cplx> full;
    for (int k = 1; k <= 10; ++k) full.push_back(deepest * double(k) / 11.0);
    for (const auto& pt : line) full.push_back(pt);
    out.polylines.push_back(std::move(full));
  }
  return out;
}

ModelBasin::ModelBasin(const Slice& s) : slice_(s) {
  chart_ = FatouChart::model(s);
  pinch_ = -0.5 * s.lambda;
  if (!chart_) return;
  frame_dir_ = chart_->attracting_direction(0) * std::polar(1.0, 0.37 * M_PI / s.q);
  if (s.q > 1) {
    rays_ = trace_model_rays(s);
    const int n = static_cast<int>(rays_.angles.size());
    rays_.wedge_label.assign(n, -1);
    auto wedge_of = [&](cplx z) {
      for (int i = 0; i < n; ++i) {
        const auto& a = rays_.polylines[i];
        const auto& b = rays_.polylines[(i + 1) % n];
        std::vector<cplx> poly;
        poly.push_back(cplx(0.0));
        for (const auto& pt : a) poly.push_back(pt);
        double ra = std::arg(a.back()), rb = std::arg(b.back());
        double span = rb - ra;
        while (span <= 0) span += kTwoPi;
        double R = std::max(std::abs(a.back()), std::abs(b.back())) * 1.2;
        for (int k = 1; k < 24; ++k) poly.push_back(std::polar(R, ra + span * k / 24.0));
        for (int k = static_cast<int>(b.size()) - 1; k >= 0; --k) poly.push_back(b[k]);
        if (point_in_polygon(poly, z)) return i;
      }
      return -1;
    };
    // Probe each sector with a small point along its attracting direction.
    for (int j = 0; j < s.q; ++j) {
      cplx probe = 0.04 * chart_->attracting_direction(j);
      int w = wedge_of(probe);
      if (w >= 0) rays_.wedge_label[w] = j;
    }
    // any unlabeled wedge (degenerate probe): fill by rotation count
    for (int i = 0; i < n; ++i)
      if (rays_.wedge_label[i] < 0) rays_.wedge_label[i] = 0;
  }
}

std::pair<cplx, cplx> ModelBasin::P_preimages(cplx w) const {
  cplx disc = std::sqrt(0.25 * slice_.lambda * slice_.lambda + w);
  return {-0.5 * slice_.lambda + disc, -0.5 * slice_.lambda - disc};
}

int ModelBasin::sector_of(cplx z) const {
  if (slice_.q == 1) return 0;
  if (std::abs(z) < 0.08) return chart_->direction_index(z);
  const int n = static_cast<int>(rays_.angles.size());
  for (int i = 0; i < n; ++i) {
    const auto& a = rays_.polylines[i];
    const auto& b = rays_.polylines[(i + 1) % n];
    std::vector<cplx> poly;
    poly.push_back(cplx(0.0));
    for (const auto& pt : a) poly.push_back(pt);
    double ra = std::arg(a.back()), rb = std::arg(b.back());
    double span = rb - ra;
    while (span <= 0) span += kTwoPi;
    double R = std::max(std::abs(a.back()), std::abs(b.back())) * 1.2;
    for (int k = 1; k < 24; ++k) poly.push_back(std::polar(R, ra + span * k / 24.0));
    for (int k = static_cast<int>(b.size()) - 1; k >= 0; --k) poly.push_back(b[k]);
    if (point_in_polygon(poly, z)) return rays_.wedge_label[i];
  }
  return chart_->direction_index(z);
}

int ModelBasin::fold_bit(cplx z) const {
  double s = ((z - pinch_) / frame_dir_).imag();
  return s > 0.0 ? 1 : 0;
}

std::optional<BasinAddress> ModelBasin::extend(cplx z, int budget) const {
  if (!chart_) return std::nullopt;
  auto ev = chart_->extended_value(z, budget);
  if (!ev) return std::nullopt;
  BasinAddress addr;
  addr.track = ev->track;
  addr.steps = ev->steps_to_sync;
  addr.value = ev->value;
  cplx w = z;
  for (int j = 0; j < addr.steps; ++j) {
    addr.sectors.push_back(sector_of(w));
    addr.bits.push_back(fold_bit(w));
    w = P(w);
  }
  return addr;
}

std::optional<cplx> ModelBasin::invert(const BasinAddress& addr) const {
  if (!chart_) return std::nullopt;
  const int q = slice_.q;
  const double deep = 10.0;
  const cplx v_sync = addr.value + cplx(double(addr.steps) / q, 0.0);
  int lift = 0;
  while (v_sync.real() + double(lift) < deep) ++lift;
  auto anchor = chart_->phi_inverse(v_sync + cplx(double(lift), 0.0));
  if (!anchor) return std::nullopt;
  cplx w = *anchor;

  const int total = q * lift + addr.steps;
  std::vector<int> sector_path(std::max(total, 1));
  for (int j = 0; j < addr.steps && j < total; ++j) sector_path[j] = addr.sectors[j];
  for (int j = addr.steps; j < total; ++j)
    sector_path[j] = j == 0 ? 0 : ((sector_path[j - 1] + slice_.p) % q + q) % q;

  for (int j = total - 1; j >= 0; --j) {
    auto [z1, z2] = P_preimages(w);
    cplx pick;
    // Levels above the petal cut stay on the 0-attached sheet: the orbit is
    // still creeping inside the petal there, so the branch is fixed by the
    // expected raw Abel coordinate, not by fold bits.
    double re_level = addr.value.real() + double(j) / q;
    if (j >= addr.steps || re_level > 0.0) {
      double expected = re_level + chart_->offset_real();
      double d1 = 1e300, d2 = 1e300;
      if (std::abs(z1) < 0.6) d1 = std::abs(chart_->u_coord(z1).real() - expected);
      if (std::abs(z2) < 0.6) d2 = std::abs(chart_->u_coord(z2).real() - expected);
      double dmin = std::min(d1, d2);
      // u ~ raw - b log(raw): allow that slack against the wrong candidate
      if (dmin > 0.5 * (1.0 + std::abs(expected))) return std::nullopt;
      pick = d1 < d2 ? z1 : z2;
    } else {
      int want = sector_path[j];
      int s1 = sector_of(z1), s2 = sector_of(z2);
      if (s1 == want && s2 != want) {
        pick = z1;
      } else if (s2 == want && s1 != want) {
        pick = z2;
      } else if (s1 == want && s2 == want) {
        int b1 = fold_bit(z1), b2 = fold_bit(z2);
        if (b1 == b2) return std::nullopt;  // frame degenerate
        pick = (b1 == addr.bits[j]) ? z1 : z2;
      } else {
        return std::nullopt;  // neither candidate matches the recorded sector
      }
    }
    w = pick;
  }
  return w;
}

double ModelBasin::excluded_petal_level(int m) const {
  // excluded petal in B*_m is P^{s-1}(max petal), (s-1) p = m (mod q),
  // 1 <= s <= q (s = 1 when m = 0): level rises by 1/q per forward step.
  const int q = slice_.q;
  int s = 1;
  if (m != 0) {
    for (s = 2; s <= q; ++s)
      if (((s - 1) * slice_.p) % q == m) break;
  }
  return double(s - 1) / double(q);
}

bool ModelBasin::in_excluded_petal(const BasinAddress& addr) const {
  return addr.value.real() >= excluded_petal_level(addr.track) - 1e-9;
}

}  // namespace parabolica
