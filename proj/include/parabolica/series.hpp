#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "parabolica/polynomial.hpp"

namespace parabolica {

inline double coeff_abs(const cplx& x) { return std::abs(x); }
inline double coeff_abs(const Poly& p) { return p.max_abs(); }

/// Power series truncated at a fixed order; arithmetic never reads beyond it.
/// The coefficient ring R is complex<double> for plain expansions and Poly
/// when coefficients are tracked as polynomials in the family parameter.
template <class R>
struct SeriesT {
  std::vector<R> c;  // c[k] multiplies z^k, k = 0..order

  SeriesT() = default;
  explicit SeriesT(int order) : c(order + 1) {}
  SeriesT(std::vector<R> coeffs) : c(std::move(coeffs)) {
    if (c.empty()) throw std::invalid_argument("series: empty coefficient list");
  }

  int order() const { return static_cast<int>(c.size()) - 1; }

  static SeriesT identity(int order) {
    SeriesT s(order);
    s.c[1] = unit();
    return s;
  }

  SeriesT operator+(const SeriesT& o) const {
    check_order(o);
    SeriesT out(order());
    for (int k = 0; k <= order(); ++k) out.c[k] = c[k] + o.c[k];
    return out;
  }
  SeriesT operator-(const SeriesT& o) const {
    check_order(o);
    SeriesT out(order());
    for (int k = 0; k <= order(); ++k) out.c[k] = c[k] - o.c[k];
    return out;
  }
  SeriesT mul(const SeriesT& o) const {
    check_order(o);
    SeriesT out(order());
    for (int i = 0; i <= order(); ++i) {
      if (coeff_abs(c[i]) == 0.0) continue;
      for (int j = 0; i + j <= order(); ++j) out.c[i + j] = out.c[i + j] + c[i] * o.c[j];
    }
    return out;
  }

  void check_order(const SeriesT& o) const {
    if (o.order() != order()) throw std::invalid_argument("series: order mismatch");
  }

 private:
  static R unit();
};

template <>
inline cplx SeriesT<cplx>::unit() { return cplx(1.0); }
template <>
inline Poly SeriesT<Poly>::unit() { return Poly(cplx(1.0)); }

/// Composition outer(inner); inner must have zero constant term so the
/// truncation is exact through the shared order.
template <class R>
SeriesT<R> series_compose(const SeriesT<R>& outer, const SeriesT<R>& inner) {
  outer.check_order(inner);
  if (coeff_abs(inner.c[0]) > 1e-14)
    throw std::invalid_argument("series_compose: inner constant term must vanish");
  const int m = outer.order();
  // Horner in the series ring.
  SeriesT<R> acc(m);
  acc.c[0] = outer.c[m];
  for (int k = m - 1; k >= 0; --k) {
    acc = acc.mul(inner);
    acc.c[0] = acc.c[0] + outer.c[k];
  }
  return acc;
}

template <class R>
SeriesT<R> series_self_iterate(const SeriesT<R>& f, int n) {
  if (n < 1) throw std::invalid_argument("series_self_iterate: n must be >= 1");
  if (coeff_abs(f.c[0]) > 1e-14)
    throw std::invalid_argument("series_self_iterate: constant term must vanish");
  SeriesT<R> out = f;
  for (int i = 1; i < n; ++i) out = series_compose(out, f);
  return out;
}

using Series = SeriesT<cplx>;
using PolySeries = SeriesT<Poly>;

/// Compositional inverse of a series with c[0] = 0, c[1] = 1, order by order.
inline Series series_reverse(const Series& h) {
  if (std::abs(h.c[0]) > 1e-14 || std::abs(h.c[1] - cplx(1.0)) > 1e-12)
    throw std::invalid_argument("series_reverse: needs tangency to the identity");
  const int m = h.order();
  Series g = Series::identity(m);
  for (int o = 2; o <= m; ++o) {
    Series comp = series_compose(g, h);
    g.c[o] -= comp.c[o];
  }
  return g;
}

inline Series poly_to_series(const Poly& p, int order) {
  Series s(order);
  for (int k = 0; k <= order; ++k) s.c[k] = p.coeff(k);
  return s;
}

}  // namespace parabolica
