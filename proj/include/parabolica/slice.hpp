#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "parabolica/polynomial.hpp"

namespace parabolica {

/// The parameter slice Per_1(lambda), lambda = exp(2*pi*i*p/q). The exact
/// pair (p,q) is kept next to the complex evaluation so combinatorial
/// bookkeeping (sector indices, petal cycles) never drifts.
struct Slice {
  int p = 1;
  int q = 1;
  cplx lambda{1.0, 0.0};
};

Slice make_slice(int p, int q);

enum class Family { F_a, G_c, GHAT_s };

struct FamilyParam {
  Family fam = Family::F_a;
  cplx value{0.0, 0.0};
};

/// f_{lambda,a}(z) = lambda z + a z^2 + z^3 and the marked-critical-point
/// relatives g_{lambda,c}, ghat_{lambda,s}.
cplx eval_family(const Slice& s, const FamilyParam& par, cplx z);
cplx eval_f(cplx lambda, cplx a, cplx z);
cplx eval_f_prime(cplx lambda, cplx a, cplx z);

/// sqrt(3 lambda) with the branch fixed once per slice (principal square
/// root of 3 lambda); sigma(s) = -sqrt(3 lambda) (s + 1/s) / 2.
cplx sqrt3lambda(const Slice& s);
cplx sigma_of_s(const Slice& s, cplx sval);

/// Conversions between the three parameters. Inversions take the requested
/// branch: s = branch * sqrt(c) for G -> GHAT, and the two roots of
/// sigma(s) = a for F -> GHAT (branch picks the root with |s| >= 1 when
/// positive, |s| <= 1 otherwise).
FamilyParam convert_param(const Slice& s, const FamilyParam& from, Family to, int branch = +1);

struct CriticalData {
  cplx c_plus;
  cplx c_minus;
  cplx v_plus;
  cplx v_minus;
  bool degenerate = false;    // a^2 = 3 lambda within tolerance
  bool branch_flagged = false;  // continuation path passed near a branch point
};

/// Critical points c_pm = (-a pm sqrt(a^2 - 3 lambda))/3 with the square
/// root continued from the base point 10(1+|lambda|) along `path` (straight
/// segment from the base to `a` when empty). c_plus carries the branch that
/// behaves like +a at the base point.
CriticalData critical_points(const Slice& s, cplx a, const std::vector<cplx>& path = {});

}  // namespace parabolica
