#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

namespace parabolica {

using cplx = std::complex<double>;

/// Dense polynomial with complex coefficients in ascending degree order.
/// The zero polynomial is stored as a single zero coefficient.
class Poly {
 public:
  Poly() : c_{cplx(0.0)} {}
  explicit Poly(cplx c0) : c_{c0} {}
  explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) {
    if (c_.empty()) c_.push_back(cplx(0.0));
  }

  static Poly variable() { return Poly(std::vector<cplx>{cplx(0.0), cplx(1.0)}); }

  const std::vector<cplx>& coeffs() const { return c_; }
  std::vector<cplx>& coeffs() { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  cplx coeff(int k) const { return k >= 0 && k < (int)c_.size() ? c_[k] : cplx(0.0); }

  double max_abs() const {
    double m = 0.0;
    for (const auto& x : c_) m = std::max(m, std::abs(x));
    return m;
  }

  /// Drops trailing coefficients below 1e-9 * (1 + max |coeff|). The degree
  /// claims for the parabolic coefficient polynomials must be recovered from
  /// rounded data, hence the relative threshold.
  Poly trimmed(double rel = 1e-9) const {
    double thresh = rel * (1.0 + max_abs());
    std::vector<cplx> out = c_;
    while (out.size() > 1 && std::abs(out.back()) < thresh) out.pop_back();
    return Poly(std::move(out));
  }

  cplx eval(cplx z) const {
    cplx r(0.0);
    for (int k = degree(); k >= 0; --k) r = r * z + c_[k];
    return r;
  }

  /// Value and derivative by Horner.
  std::pair<cplx, cplx> eval2(cplx z) const {
    cplx p(0.0), dp(0.0);
    for (int k = degree(); k >= 0; --k) {
      dp = dp * z + p;
      p = p * z + c_[k];
    }
    return {p, dp};
  }

  Poly derivative() const {
    if (degree() == 0) return Poly();
    std::vector<cplx> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * double(k);
    return Poly(std::move(d));
  }

  Poly operator+(const Poly& o) const {
    std::vector<cplx> out(std::max(c_.size(), o.c_.size()), cplx(0.0));
    for (size_t k = 0; k < c_.size(); ++k) out[k] += c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k) out[k] += o.c_[k];
    return Poly(std::move(out));
  }
  Poly operator-(const Poly& o) const {
    std::vector<cplx> out(std::max(c_.size(), o.c_.size()), cplx(0.0));
    for (size_t k = 0; k < c_.size(); ++k) out[k] += c_[k];
    for (size_t k = 0; k < o.c_.size(); ++k) out[k] -= o.c_[k];
    return Poly(std::move(out));
  }
  Poly operator*(const Poly& o) const {
    std::vector<cplx> out(c_.size() + o.c_.size() - 1, cplx(0.0));
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(out));
  }
  Poly operator*(cplx s) const {
    std::vector<cplx> out = c_;
    for (auto& x : out) x *= s;
    return Poly(std::move(out));
  }

  /// Degree cap used by the nested series-over-polynomial arithmetic.
  Poly capped(int max_degree) const {
    if (degree() <= max_degree) return *this;
    std::vector<cplx> out(c_.begin(), c_.begin() + max_degree + 1);
    return Poly(std::move(out));
  }

  bool is_zero(double rel = 1e-14) const {
    return max_abs() <= rel;
  }

 private:
  std::vector<cplx> c_;
};

/// Build p(z) = prod (z - r_i).
inline Poly poly_from_roots(const std::vector<cplx>& roots) {
  Poly p(cplx(1.0));
  for (cplx r : roots) p = p * Poly(std::vector<cplx>{-r, cplx(1.0)});
  return p;
}

}  // namespace parabolica
