#pragma once

#include <optional>
#include <string>
#include <vector>

#include "parabolica/parabolic.hpp"
#include "parabolica/rays.hpp"
#include "parabolica/slice.hpp"

namespace parabolica {

enum class ParamTag : int {
  Exterior = 0,
  Adjacent = 1,
  Bitransitive = 2,
  Capture = 3,
  DoubleParabolicNear = 4,
  MisiurewiczParabolicNear = 5,
  Undecided = 6,
};

struct ParamClass {
  ParamTag tag = ParamTag::Undecided;
  int escape_iterations = 0;   // Exterior
  int bitransitive_m = 0;      // Bitransitive
  int capture_depth = 0;       // Capture
  int petal_entry_plus = -1;   // diagnostics: entry times of the two critical orbits
  int petal_entry_minus = -1;
};

struct ClassifyBudget {
  int escape = 2048;
  int parabolic_per_q = 10000;  // N_max = parabolic_per_q * q
  double entry_threshold = 32.0;
  double dp_near_tol = 1e-6;
};

/// Context shared across many classifications of the same slice: the
/// parabolic coefficient polynomial and constants.
struct ClassifyContext {
  Slice slice;
  Poly A_poly;  // A_{p/q}(a)
  double dp_radius = 0.0;

  static ClassifyContext make(const Slice& s);
};

ParamClass classify_param(const ClassifyContext& ctx, cplx a, const ClassifyBudget& budget = {});

/// Type m of a double parabolic parameter: the unique m with dynamical rays
/// at the angles of Theta_m and Theta_{m+1} landing at 0 (ray trace plus
/// fixed-point refinement).
struct TypeClassification {
  bool ok = false;
  int m = -1;
  std::vector<int> landing_cycles;  // indices k with Theta_k landing at 0
  std::string message;
};
TypeClassification classify_double_parabolic_type(const Slice& s, cplx a_dp);

/// Assign types to the whole set and optionally the wake angles (parameter
/// rays traced at all Theta angles; expensive, so optional).
void assign_types(DoubleParabolicSet& dp);
void assign_wake_angles(DoubleParabolicSet& dp, double target_potential = 1e-5);

}  // namespace parabolica
