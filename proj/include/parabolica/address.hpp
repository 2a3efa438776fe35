#pragma once

#include <optional>
#include <vector>

#include "parabolica/angles.hpp"
#include "parabolica/fatou.hpp"
#include "parabolica/rays.hpp"

namespace parabolica {

/// Itinerary address of a point in the parabolic basin: sector indices of
/// the forward iterates, fold bits from the figure-eight subdivision at the
/// critical point, and the extended Fatou value. omega marks are the dyadic
/// rationals spelled by the bit tails.
struct BasinAddress {
  int track = 0;              // sector of the point itself
  int steps = 0;              // single-map steps to the sector-0 sync anchor
  cplx value{0.0, 0.0};       // extended Fatou value
  std::vector<int> sectors;   // sector of f^j(z), j = 0..steps-1
  std::vector<int> bits;      // fold bit of f^j(z), j = 0..steps-1

  Rational dyadic_mark(int j) const;  // omega_j from the bit tail starting at j
};

/// External rays of the quadratic model P_lambda at the angles of the unique
/// x2-cycle with rotation number p/q; used for the point-in-sector test.
struct ModelRays {
  Slice slice;
  std::vector<Angle> angles;                  // sorted, q of them
  std::vector<std::vector<cplx>> polylines;   // each from near 0 outward
  std::vector<int> wedge_label;               // sector label of the wedge after ray i
};

/// Traces the model portrait rays once per slice (cheap, quadratic pullback).
ModelRays trace_model_rays(const Slice& s, double target_potential = 1e-8);

/// The quadratic-model basin toolkit: chart + rays + membership tests.
class ModelBasin {
 public:
  explicit ModelBasin(const Slice& s);

  const FatouChart& chart() const { return *chart_; }
  const Slice& slice() const { return slice_; }

  cplx P(cplx z) const { return slice_.lambda * z + z * z; }
  std::pair<cplx, cplx> P_preimages(cplx w) const;

  /// Sector of an arbitrary point (wedges cut by the portrait rays;
  /// direction index near the origin). Everything is labeled so that the
  /// critical-point basin sits in sector 0.
  int sector_of(cplx z) const;

  /// Fold bit: which side of the figure-eight frame at the critical point.
  int fold_bit(cplx z) const;

  /// Extend: forward itinerary + extended Fatou value.
  std::optional<BasinAddress> extend(cplx z, int budget = -1) const;

  /// Invert: the unique basin point with the given address (pullback of the
  /// deep petal point, branches by sector match and fold bits).
  std::optional<cplx> invert(const BasinAddress& addr) const;

  /// Petal exclusion threshold for sector m: points with extended value
  /// real part above this belong to the excluded petal P_m of the covering.
  double excluded_petal_level(int m) const;
  bool in_excluded_petal(const BasinAddress& addr) const;

  bool valid() const { return chart_.has_value(); }

 private:
  Slice slice_;
  std::optional<FatouChart> chart_;
  ModelRays rays_;
  cplx pinch_;       // critical point -lambda/2
  cplx frame_dir_;   // fixed frame direction for the fold bit
};

}  // namespace parabolica
