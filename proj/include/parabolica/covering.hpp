#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "parabolica/address.hpp"
#include "parabolica/locus.hpp"

namespace parabolica {

/// The parametrization of parabolic components and the double covering onto
/// the quadratic filled Julia set. Ties the f_a-plane Fatou data to the
/// model basin through extended-value matching.
class Covering {
 public:
  explicit Covering(const Slice& s);

  const ModelBasin& model() const { return model_; }
  const Slice& slice() const { return slice_; }
  bool valid() const { return model_.valid(); }

  /// Fatou data of the free critical value of f_a. ok only when both
  /// critical orbits converge and the chart exists.
  struct FatouData {
    bool ok = false;
    cplx anchor_crit;        // designated critical point (on the max petal boundary)
    cplx free_crit;          // the other critical point
    cplx value;              // extended Fatou value of v_- = f(free_crit)
    int track = 0;           // sector track of v_-
    int steps = 0;           // steps to the sector-0 sync anchor
    std::vector<int> bits;   // fold bits along the orbit of v_-
    double balance = 0.0;    // Re(val(c_plus)) - Re(val(c_minus)): zero on the curve I
    cplx balance_c{0.0, 0.0};  // full complex difference val(c_plus) - val(c_minus)
    int side = 0;            // sign of balance
    std::string message;
  };
  FatouData fatou_data(cplx a) const;

  /// Psi(a): the model point matching the address of v_-(a).
  std::optional<cplx> psi(cplx a) const;

  struct Sample {
    bool ok = false;
    cplx a;
    cplx z;             // covering value G(a)
    int side = 0;       // which sheet (sign of the balance)
    bool near_curve = false;  // |balance| below tolerance: branch flagged
    std::string message;
  };
  Sample eval(cplx a) const;  // G(a): Psi pulled back one more step

  struct FiberResult {
    bool ok = false;
    bool excluded = false;  // z inside an excluded petal: no fiber
    std::vector<cplx> fibers;
    std::vector<double> residuals;  // |G(fiber) - z|
    std::string message;
  };
  FiberResult fibers(cplx z, int seeds_per_side = 6) const;

  /// Seed anchors (a, G(a), side) over the parameter window, built lazily.
  struct Anchor {
    cplx a;
    cplx z;
    int side;
  };
  const std::vector<Anchor>& anchors() const;

 private:
  Slice slice_;
  ModelBasin model_;
  ClassifyContext ctx_;
  mutable std::vector<Anchor> anchors_;
  mutable bool anchors_built_ = false;

  std::optional<cplx> solve_value_equation(cplx seed, cplx target_value, int target_track,
                                           int want_side, cplx z_check) const;
};

}  // namespace parabolica
