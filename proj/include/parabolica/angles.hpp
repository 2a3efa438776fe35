#pragma once

#include <optional>
#include <vector>

#include "parabolica/rational.hpp"

namespace parabolica {

/// Angle on R/Z, exact value in [0,1).
struct Angle {
  Rational value;
  Angle() = default;
  Angle(Rational v) : value(v.mod1()) {}
  bool operator==(const Angle& o) const { return value == o.value; }
  bool operator<(const Angle& o) const { return value < o.value; }
  double to_double() const { return value.to_double(); }
  std::string str() const { return value.str(); }
};

inline Angle mul_mod1(const Angle& t, long long d) { return Angle((t.value * Rational(d)).mod1()); }

/// Periodic cycle under multiplication by d. Angles are stored sorted by
/// value with a separate marked base index; gaps are the circular
/// differences of the sorted angles starting from the base angle, so they
/// always sum to 1.
struct RotationCycle {
  std::vector<Angle> angles;         // sorted ascending
  int base_index = 0;                // marked theta_0 within `angles`
  int multiplier_d = 3;
  std::optional<Rational> rotation;  // p/q when the cycle is combinatorially a rotation
  std::vector<Rational> gaps;        // circular gaps from the base angle

  int length() const { return static_cast<int>(angles.size()); }
  Angle base_angle() const { return angles[base_index]; }
  bool same_set(const RotationCycle& o) const;
  RotationCycle shifted_half() const;  // every angle + 1/2
};

struct OrbitResult {
  bool periodic = false;  // true iff the starting angle itself is on the cycle
  int preperiod = 0;      // tail length before entering the cycle
  RotationCycle cycle;
};

/// Forward orbit of t under multiplication by d; detects the eventual cycle
/// and its rotation number when one exists.
OrbitResult orbit_under_mul(const Angle& t, int d);

/// All cycles of rotation number p/q under multiplication by d, by brute
/// force over numerators of denominator d^q - 1. gcd(p,q) = 1 required.
std::vector<RotationCycle> enumerate_cycles(int d, int p, int q);

/// The distinguished cycle Theta_m, 0 <= m <= q, for multiplication by 3:
/// built from the exact gap chain (d_0 from the closed form, successive gaps
/// tripled with unit drops at the two marked indices), laid out around the
/// circle and anchored at the smaller of the two admissible base angles.
/// For m > floor(q/2) this returns Theta_{q-m} shifted by 1/2.
RotationCycle theta_m(int p, int q, int m);

/// Exact chain gaps (d_0 .. d_{q-1}) of Theta_m in orbit order, m <= floor(q/2).
std::vector<Rational> theta_gap_chain(int p, int q, int m);

/// Angles 1 - theta in reversed order; rotation number becomes 1 - p/q.
RotationCycle reflect_cycle(const RotationCycle& c);

/// All s with d^depth * s == t (mod 1); exactly d^depth values, sorted.
std::vector<Angle> angle_preimages(const Angle& t, int d, int depth);

/// Eventual period and preperiod of t under multiplication by d.
struct AnglePeriod {
  int preperiod = 0;
  int period = 1;
};
AnglePeriod angle_period(const Angle& t, int d);

}  // namespace parabolica
