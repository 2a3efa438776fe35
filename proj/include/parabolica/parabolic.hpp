#pragma once

#include <optional>
#include <vector>

#include "parabolica/angles.hpp"
#include "parabolica/polynomial.hpp"
#include "parabolica/roots.hpp"
#include "parabolica/series.hpp"
#include "parabolica/slice.hpp"

namespace parabolica {

/// Coefficient of z^{q+1} in the q-th iterate of the family, as a polynomial
/// in the parameter: A_{p/q}(a) for F_a, and for G_c the polynomial in
/// u = 1/c (the paper's C_{p/q}(1/c), degree q in c after trim).
struct ParabolicCoefficient {
  Slice slice;
  Family family = Family::F_a;
  Poly coeff;                      // in a (F_a) or in u = 1/c (G_c)
  double max_intermediate = 0.0;   // largest |coefficient| among z^2..z^q terms of f^q
  cplx eval(cplx param_or_u) const { return coeff.eval(param_or_u); }
};

/// Series of the q-th iterate with coefficients tracked as polynomials in
/// the family parameter. Throws if the z^2..z^q coefficients fail to vanish
/// (the slice data would be inconsistent, lambda not a primitive q-th root).
ParabolicCoefficient parabolic_coefficient(const Slice& s, Family fam, int order = -1);

/// Plain complex series of f_{lambda,a}^n at a fixed parameter.
Series family_iterate_series(const Slice& s, const FamilyParam& par, int n, int order);

struct DoubleParabolicParam {
  cplx a;
  int type_m = -1;                       // portrait Theta_m u Theta_{m+1}
  std::vector<Angle> wake_angles;        // the four parameter-ray angles, when computed
  double residual_A = 0.0;               // |A_{p/q}(a)|
};

struct DoubleParabolicSet {
  Slice slice;
  std::vector<DoubleParabolicParam> params;  // ordered by type once assigned
  Poly a_coefficient;                        // A_{p/q} as polynomial in a
  Poly u_coefficient;                        // C_{p/q}(1/c) as polynomial in u = 1/c
  int degree_u = 0;                          // trimmed degree, expected q
  int degree_a_observed = 0;                 // reported, not asserted
  double cross_check = 0.0;                  // A-roots vs transported C-roots mismatch
  bool ok = true;
  std::string message;
};

/// Roots of C_{p/q}(1/c), transported to the a-plane via s = +-sqrt(c),
/// a = sigma(s), deduplicated to exactly q values and verified against
/// A_{p/q}. Types are assigned separately (needs ray tracing).
DoubleParabolicSet double_parabolic_params(const Slice& s);

}  // namespace parabolica
