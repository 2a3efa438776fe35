#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "parabolica/series.hpp"
#include "parabolica/slice.hpp"

namespace parabolica {

/// Attracting Fatou coordinate for the return map F = f^q of a map with a
/// parabolic fixed point at 0, f'(0) = exp(2 pi i p/q) and nonvanishing
/// z^{q+1} coefficient A. The chart owns the normal-form change of variable
/// killing the z^{q+2}..z^{2q} terms, the log-correction b, and the Abel
/// limit evaluator with Richardson extrapolation in N^{-1/q}.
class FatouChart {
 public:
  /// map: any of the generators below; order of the series is 2q+3.
  struct MapRef {
    cplx lambda;
    Family fam = Family::F_a;
    cplx param;  // a (F_a) or c (G_c); the quadratic model uses QuadraticModel
    bool quadratic_model = false;
  };

  static std::optional<FatouChart> build(const Slice& s, MapRef map, cplx normalization_point);
  /// Chart of the quadratic model P_lambda(z) = lambda z + z^2, normalized
  /// at the critical point -lambda/2.
  static std::optional<FatouChart> model(const Slice& s);

  cplx apply(cplx z) const;         // one step of the underlying map f
  cplx apply_prime(cplx z) const;   // f'
  cplx apply_return(cplx z) const;  // f^q

  int q() const { return q_; }
  int p() const { return p_; }
  cplx coefficient_A() const { return A_; }
  cplx log_correction_b() const { return b_; }
  cplx normalization_point() const { return norm_point_; }
  double cut_level() const { return 0.0; }  // after normalization
  double petal_entry_threshold() const { return entry_threshold_; }

  /// Direction index of a point near 0: which of the q attracting
  /// directions its argument is closest to; 0 is the direction of the
  /// normalization point's petal entry.
  int direction_index(cplx z) const;
  cplx attracting_direction(int j) const;

  /// u = -1/(q A H(z)^q) in the normal-form coordinate.
  cplx u_coord(cplx z) const;

  /// Normalized Fatou coordinate of a point in the sector-0 petal zone:
  /// phi(F(z)) = phi(z) + 1, phi(normalization point track) = 0.
  std::optional<cplx> phi(cplx z) const;

  /// Inverse of phi in the deep petal, Newton on phi.
  std::optional<cplx> phi_inverse(cplx xi) const;

  /// Extended Fatou value of any point attracted to 0: iterate to the deep
  /// petal, synchronize to sector 0, subtract steps/q. Also reports the
  /// step count and the sector track (sector of z in the synchronized
  /// labeling). Returns nullopt when the orbit fails to enter in budget.
  struct ExtendedValue {
    cplx value;
    int steps_to_sync = 0;  // single-map steps from z to the sector-0 anchor point
    int track = 0;          // sector index of z itself
  };
  std::optional<ExtendedValue> extended_value(cplx z, int budget = -1) const;

  /// Raw (unnormalized) Abel value at a deep point u-side; used internally
  /// and by diagnostics.
  std::optional<cplx> phi_hat_deep(cplx z) const;

  /// Value and complex derivative of the normalized phi.
  struct ValDer {
    cplx val;
    cplx der;
  };
  std::optional<ValDer> phi_d(cplx z) const;

  double offset_real() const { return offset_.real(); }

 private:
  Slice slice_;
  MapRef map_;
  int p_ = 1, q_ = 1;
  cplx A_{0.0};
  cplx b_{0.0};
  std::vector<cplx> H_;  // normal-form polynomial, H(z) = z + H_[0] z^2 + ...
  cplx dir0_{1.0};
  cplx norm_point_{0.0};
  cplx offset_{0.0};
  double entry_threshold_ = 32.0;
  int abel_base_ = 2048;

  cplx eval_H(cplx z) const;
  cplx eval_H_prime(cplx z) const;
  std::optional<ValDer> phi_raw_d(cplx z) const;  // Abel limit without normalization
  std::optional<cplx> phi_raw(cplx z) const;
};

/// Petal-chain labels P^n_k with n p + k = m (mod q), following the mapping
/// sequence P^n_k -> P^{n-1}_{k+p}.
struct PetalChainLabel {
  int n;  // pullback depth (negative = forward images)
  int k;  // sector index
};
struct PetalChain {
  int m = 0;  // sector of the anchor petal P^0_m
  std::vector<PetalChainLabel> labels;
};
PetalChain petal_chain(int p, int q, int m, int depth);

}  // namespace parabolica
