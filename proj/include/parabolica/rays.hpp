#pragma once

#include <string>
#include <vector>

#include "parabolica/angles.hpp"
#include "parabolica/boettcher.hpp"
#include "parabolica/slice.hpp"

namespace parabolica {

enum class RayStatus { Landed, Crashed, BudgetExceeded, ReachedTarget };

struct RaySample {
  double potential;
  cplx z;
};

struct RayTrace {
  bool parameter_plane = false;
  Angle angle;
  std::vector<RaySample> samples;  // potentials descending, consecutive ratio 1/2
  RayStatus status = RayStatus::ReachedTarget;
  cplx terminal{0.0, 0.0};  // landing estimate; refined for periodic angles
  double terminal_gap = -1.0;  // distance from last sample to the refined terminal
  cplx crash_witness{0.0, 0.0};
  std::string note;
};

struct RayOptions {
  double top_potential = 8.0;
  double floor_potential = 1e-250;   // hard floor for refinement descent
  int max_newton = 60;
  int landing_window = 20;
  double landing_tol = 1e-6;
  bool refine_landing = true;
  int max_total_steps = 200000;
};

/// External ray of f_{lambda,a} at angle t, traced from the top potential
/// down to target_potential by potential halving; each sample is obtained by
/// exact pullback chains anchored in the top zone.
RayTrace trace_dynamical_ray(const Slice& s, cplx a, const Angle& t, double target_potential,
                             const RayOptions& opt = {});

/// Parameter ray: continuation in a of phi_a(v_-(a)) = exp(t + 2 pi i angle).
/// sector in {0,1,2} picks one of the three components via the cube-root
/// seed of the leading asymptotics of Phi_infty.
RayTrace trace_parameter_ray(const Slice& s, const Angle& t, double target_potential, int sector,
                             const RayOptions& opt = {});

/// Landing point of the dynamical ray at a q-periodic angle, refined through
/// backward stabilization and a fixed-point selection of f^period.
struct LandingInfo {
  bool resolved = false;
  cplx point{0.0, 0.0};
  double confidence = 0.0;  // distance margin to the next fixed-point candidate
};
LandingInfo refine_periodic_landing(const Slice& s, cplx a, const Angle& t, const RayTrace& trace);

/// The fixed points of f^n as a polynomial root set (cached per call site).
std::vector<cplx> periodic_points(const Slice& s, cplx a, int n);

}  // namespace parabolica
