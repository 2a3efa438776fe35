#pragma once

#include <vector>

#include "parabolica/covering.hpp"

namespace parabolica {

/// Piece of the special curve I inside the m-labelled parabolic component:
/// parameters where both critical points of the return map lie on the
/// boundary of the maximal petal (balance of the two Fatou levels).
struct SpecialCurveApprox {
  int m = 0;
  std::vector<cplx> points;
  std::vector<double> residuals;  // |Re balance| at each sample
  bool complete = true;
  std::string message;
};

SpecialCurveApprox special_curve(const Slice& s, int m, int samples);

}  // namespace parabolica
