#include "parabolica/covering.hpp"

#include <algorithm>
#include <cmath>

namespace parabolica {

namespace {

// Fold frame in the f_a plane, anchored at the designated critical point and
// aligned with the chart's sector-0 direction; mirrors the model frame.
int f_fold_bit(cplx z, cplx anchor, cplx frame) {
  return (((z - anchor) / frame).imag() > 0.0) ? 1 : 0;
}

}  // namespace

Covering::Covering(const Slice& s) : slice_(s), model_(s), ctx_(ClassifyContext::make(s)) {}

Covering::FatouData Covering::fatou_data(cplx a) const {
  FatouData out;
  CriticalData cd = critical_points(slice_, a);
  if (cd.degenerate) {
    out.message = "degenerate critical point";
    return out;
  }

  FatouChart::MapRef mr;
  mr.fam = Family::F_a;
  mr.param = a;
  mr.lambda = slice_.lambda;

  auto chart_plus = FatouChart::build(slice_, mr, cd.c_plus);
  if (!chart_plus) {
    out.message = "chart unavailable (A ~ 0 or critical orbit not attracted)";
    return out;
  }
  auto val_minus = chart_plus->extended_value(cd.c_minus);
  if (!val_minus) {
    out.message = "free critical orbit does not enter the petal in budget";
    return out;
  }
  out.balance_c = -val_minus->value;  // val(c_plus) = 0 by normalization
  out.balance = out.balance_c.real();
  out.side = out.balance >= 0.0 ? +1 : -1;

  // The designated (petal-boundary) critical point is the one with the
  // larger Fatou real part; re-anchor when that is c_minus.
  const FatouChart* chart = &*chart_plus;
  std::optional<FatouChart> chart_minus;
  cplx anchor = cd.c_plus, free_c = cd.c_minus;
  if (val_minus->value.real() > 0.0) {
    chart_minus = FatouChart::build(slice_, mr, cd.c_minus);
    if (!chart_minus) {
      out.message = "re-anchored chart unavailable";
      return out;
    }
    chart = &*chart_minus;
    anchor = cd.c_minus;
    free_c = cd.c_plus;
  }
  out.anchor_crit = anchor;
  out.free_crit = free_c;

  cplx v_free = eval_f(slice_.lambda, a, free_c);
  auto ev = chart->extended_value(v_free);
  if (!ev) {
    out.message = "free critical value does not enter the petal in budget";
    return out;
  }
  out.value = ev->value;
  out.track = ev->track;
  out.steps = ev->steps_to_sync;

  cplx frame = chart->attracting_direction(0) * std::polar(1.0, 0.37 * M_PI / slice_.q);
  cplx w = v_free;
  out.bits.clear();
  for (int j = 0; j < out.steps; ++j) {
    out.bits.push_back(f_fold_bit(w, anchor, frame));
    w = eval_f(slice_.lambda, a, w);
  }
  out.ok = true;
  return out;
}

std::optional<cplx> Covering::psi(cplx a) const {
  FatouData fd = fatou_data(a);
  if (!fd.ok) return std::nullopt;
  BasinAddress addr;
  addr.track = fd.track;
  addr.steps = fd.steps;
  addr.value = fd.value;
  addr.bits = fd.bits;
  addr.sectors.resize(fd.steps);
  for (int j = 0; j < fd.steps; ++j)
    addr.sectors[j] = ((fd.track + j * slice_.p) % slice_.q + slice_.q) % slice_.q;
  return model_.invert(addr);
}

Covering::Sample Covering::eval(cplx a) const {
  Sample out;
  out.a = a;
  FatouData fd = fatou_data(a);
  if (!fd.ok) {
    out.message = fd.message;
    return out;
  }
  out.side = fd.side;
  out.near_curve = std::abs(fd.balance) < 1e-6;

  BasinAddress addr;
  addr.track = ((fd.track - slice_.p) % slice_.q + slice_.q) % slice_.q;
  addr.steps = fd.steps + 1;
  addr.value = fd.value - cplx(1.0 / slice_.q, 0.0);
  addr.bits.assign(1, fd.side > 0 ? 1 : 0);
  addr.bits.insert(addr.bits.end(), fd.bits.begin(), fd.bits.end());
  addr.sectors.resize(addr.steps);
  for (int j = 0; j < addr.steps; ++j)
    addr.sectors[j] = ((addr.track + j * slice_.p) % slice_.q + slice_.q) % slice_.q;
  auto z = model_.invert(addr);
  if (!z) {
    out.message = "model inversion failed";
    return out;
  }
  out.ok = true;
  out.z = *z;
  return out;
}

const std::vector<Covering::Anchor>& Covering::anchors() const {
  if (anchors_built_) return anchors_;
  anchors_built_ = true;
  const double R = 1.2 * std::sqrt(3.0) + 1.2;
  const int N = 41;
  for (int iy = 0; iy < N; ++iy) {
    for (int ix = 0; ix < N; ++ix) {
      cplx a(-R + 2.0 * R * ix / (N - 1), -R + 2.0 * R * iy / (N - 1));
      ParamClass pc = classify_param(ctx_, a);
      if (pc.tag != ParamTag::Adjacent && pc.tag != ParamTag::Bitransitive &&
          pc.tag != ParamTag::Capture)
        continue;
      Sample smp = eval(a);
      if (!smp.ok || smp.near_curve) continue;
      anchors_.push_back({a, smp.z, smp.side});
    }
  }
  return anchors_;
}

std::optional<cplx> Covering::solve_value_equation(cplx seed, cplx target_value, int target_track,
                                                   int /*unused*/, cplx z_check) const {
  cplx a = seed;
  double h0 = 1e-6;
  for (int it = 0; it < 40; ++it) {
    FatouData fd = fatou_data(a);
    if (!fd.ok) return std::nullopt;
    cplx diff = fd.value - target_value;
    if (std::abs(diff) < 2e-9 && fd.track == target_track) break;
    double h = std::max(h0 * std::abs(a), 1e-9);
    FatouData fx = fatou_data(a + cplx(h, 0.0));
    FatouData fy = fatou_data(a + cplx(0.0, h));
    if (!fx.ok || !fy.ok) return std::nullopt;
    cplx dx = (fx.value - fd.value) / h;
    cplx dy = (fy.value - fd.value) / h;
    cplx deriv = 0.5 * (dx + cplx(0.0, -1.0) * dy);
    if (std::abs(deriv) < 1e-14) return std::nullopt;
    cplx step = diff / deriv;
    double cap = 0.35;
    if (std::abs(step) > cap) step *= cap / std::abs(step);
    a -= step;
    if (!std::isfinite(a.real()) || std::abs(a) > 20.0) return std::nullopt;
  }
  FatouData fd = fatou_data(a);
  if (!fd.ok || fd.track != target_track) return std::nullopt;
  if (std::abs(fd.value - target_value) > 1e-7) return std::nullopt;
  Sample smp = eval(a);
  if (!smp.ok) return std::nullopt;
  if (std::abs(smp.z - z_check) > 1e-6) return std::nullopt;
  return a;
}

Covering::FiberResult Covering::fibers(cplx z, int seeds_per_side) const {
  FiberResult out;
  auto addrz = model_.extend(z);
  if (!addrz) {
    out.message = "z is not in the basin interior";
    return out;
  }
  if (model_.in_excluded_petal(*addrz)) {
    out.excluded = true;
    out.message = "z lies in an excluded petal";
    return out;
  }
  // G(a) = z requires val(v_-(a)) = val(z) + 1/q and the tracks to match
  // one pullback step up. The two solutions sit in different component
  // sheets; seed from the anchors nearest in the image and collect distinct
  // verified solutions.
  cplx target_value = addrz->value + cplx(1.0 / slice_.q, 0.0);
  int target_track = ((addrz->track + slice_.p) % slice_.q + slice_.q) % slice_.q;

  const auto& anc = anchors();
  std::vector<cplx> seeds;
  {
    std::vector<const Anchor*> cand;
    for (const auto& an : anc) cand.push_back(&an);
    std::sort(cand.begin(), cand.end(), [&](const Anchor* x, const Anchor* y) {
      return std::abs(x->z - z) < std::abs(y->z - z);
    });
    const int max_seeds = std::max(8, 2 * seeds_per_side);
    for (int i = 0; i < std::min<int>(max_seeds, static_cast<int>(cand.size())); ++i)
      seeds.push_back(cand[i]->a);
  }
  auto try_seed = [&](cplx seed) {
    auto sol = solve_value_equation(seed, target_value, target_track, 0, z);
    if (!sol) return;
    for (cplx have : out.fibers)
      if (std::abs(have - *sol) < 1e-6) return;
    out.fibers.push_back(*sol);
    Sample smp = eval(*sol);
    out.residuals.push_back(smp.ok ? std::abs(smp.z - z) : 1e300);
  };
  for (size_t i = 0; i < seeds.size(); ++i) {
    try_seed(seeds[i]);
    if (out.fibers.size() == 1) try_seed(-out.fibers[0]);  // the mirror sheet
    if (out.fibers.size() >= 2 && i >= 5) break;
    if (out.fibers.size() > 2) break;
  }
  out.ok = out.fibers.size() == 2;
  if (!out.ok && out.message.empty())
    out.message = "found " + std::to_string(out.fibers.size()) + " fiber(s)";
  return out;
}

}  // namespace parabolica
