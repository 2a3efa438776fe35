#include "parabolica/angles.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace parabolica {

namespace {

// Sorted cycle + base index + gaps + rotation from an orbit list in dynamical
// order. Returns rotation only when multiplication by d acts as a circular
// rotation on the sorted angles.
RotationCycle build_cycle(std::vector<Angle> orbit, int d, const Angle& base) {
  RotationCycle c;
  c.multiplier_d = d;
  std::sort(orbit.begin(), orbit.end());
  c.angles = orbit;
  const int q = c.length();
  c.base_index = static_cast<int>(std::find(c.angles.begin(), c.angles.end(), base) - c.angles.begin());

  auto index_of = [&](const Angle& a) {
    return static_cast<int>(std::lower_bound(c.angles.begin(), c.angles.end(), a) - c.angles.begin());
  };
  std::optional<int> rot;
  for (int i = 0; i < q; ++i) {
    int j = index_of(mul_mod1(c.angles[i], d));
    int step = ((j - i) % q + q) % q;
    if (!rot) rot = step;
    else if (*rot != step) { rot.reset(); break; }
  }
  if (rot) c.rotation = Rational(*rot, q);

  c.gaps.resize(q);
  for (int k = 0; k < q; ++k) {
    const Angle& a = c.angles[(c.base_index + k) % q];
    const Angle& b = c.angles[(c.base_index + k + 1) % q];
    c.gaps[k] = (b.value - a.value).mod1();
    if (q == 1) c.gaps[k] = Rational(1);
  }
  return c;
}

}  // namespace

bool RotationCycle::same_set(const RotationCycle& o) const {
  if (length() != o.length()) return false;
  for (int i = 0; i < length(); ++i)
    if (!(angles[i] == o.angles[i])) return false;
  return true;
}

RotationCycle RotationCycle::shifted_half() const {
  std::vector<Angle> shifted;
  shifted.reserve(angles.size());
  for (const auto& a : angles) shifted.emplace_back(a.value + Rational(1, 2));
  Angle new_base(base_angle().value + Rational(1, 2));
  return build_cycle(std::move(shifted), multiplier_d, new_base);
}

OrbitResult orbit_under_mul(const Angle& t, int d) {
  if (d < 2) throw std::invalid_argument("orbit_under_mul: d must be >= 2");
  OrbitResult res;
  std::vector<Angle> orbit;
  std::map<Rational, int> seen;
  Angle u = t;
  while (!seen.count(u.value)) {
    seen[u.value] = static_cast<int>(orbit.size());
    orbit.push_back(u);
    u = mul_mod1(u, d);
  }
  int first = seen[u.value];
  res.preperiod = first;
  res.periodic = (first == 0);
  std::vector<Angle> cyc(orbit.begin() + first, orbit.end());
  res.cycle = build_cycle(cyc, d, cyc.front());
  return res;
}

AnglePeriod angle_period(const Angle& t, int d) {
  OrbitResult r = orbit_under_mul(t, d);
  return {r.preperiod, r.cycle.length()};
}

std::vector<RotationCycle> enumerate_cycles(int d, int p, int q) {
  if (d < 2 || q < 1) throw std::invalid_argument("enumerate_cycles: bad arguments");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("enumerate_cycles: p/q must be reduced");
  BigInt denom = 1;
  for (int i = 0; i < q; ++i) denom *= d;
  denom -= 1;  // d^q - 1
  const long long N = denom.convert_to<long long>();
  const Rational target_rot = Rational(p % q, q).mod1();

  std::vector<bool> visited(N, false);
  std::vector<RotationCycle> out;
  for (long long k = 0; k < N; ++k) {
    if (visited[k]) continue;
    // orbit of k/(d^q-1) under multiplication by d, exact in int64
    std::vector<long long> orb;
    long long x = k;
    do {
      visited[x] = true;
      orb.push_back(x);
      x = (x * d) % N;
    } while (x != k);
    if (static_cast<int>(orb.size()) != q && !(q == 1 && orb.size() == 1)) continue;
    std::vector<Angle> angs;
    for (long long n : orb) angs.emplace_back(Rational(BigInt(n), BigInt(N)));
    RotationCycle c = build_cycle(angs, d, angs.front());
    if (c.length() != q) continue;
    if (c.rotation && c.rotation->mod1() == target_rot) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const RotationCycle& a, const RotationCycle& b) {
    return a.angles.front() < b.angles.front();
  });
  return out;
}

std::vector<Rational> theta_gap_chain(int p, int q, int m) {
  if (m < 0 || m > q / 2) throw std::invalid_argument("theta_gap_chain: need 0 <= m <= q/2");
  const Rational three_q = pow_int(3, q);
  const Rational lead = three_q / (three_q - Rational(1));
  std::vector<Rational> d(q);
  if (m == 0) {
    d[0] = lead * Rational(2, 3);
    for (int i = 0; i + 1 < q; ++i) {
      d[i + 1] = d[i] * Rational(3);
      if (i == 0) d[i + 1] -= Rational(2);
    }
  } else {
    d[0] = lead * (Rational(1) / pow_int(3, m + 1) + Rational(1, 3));
    for (int i = 0; i + 1 < q; ++i) {
      d[i + 1] = d[i] * Rational(3);
      if (i == 0 || i == m) d[i + 1] -= Rational(1);
    }
  }
  Rational sum(0);
  for (const auto& g : d) sum += g;
  if (!(sum == Rational(1))) throw std::logic_error("theta_gap_chain: gaps do not sum to 1");
  return d;
}

RotationCycle theta_m(int p, int q, int m) {
  if (m < 0 || m > q) throw std::invalid_argument("theta_m: need 0 <= m <= q");
  if (std::gcd(p, q) != 1) throw std::invalid_argument("theta_m: p/q must be reduced");
  if (m > q / 2) return theta_m(p, q, q - m).shifted_half();

  const int pm = ((p % q) + q) % q;
  std::vector<Rational> chain = theta_gap_chain(p, q, m);

  // Lay the chain gaps around the circle: gap i of the chain occupies the
  // (i*p mod q)-th circular slot counted from the base angle.
  std::vector<Rational> slot(q);
  for (int i = 0; i < q; ++i) slot[(static_cast<long long>(i) * pm) % q] = chain[i];

  // Multiplication by 3 must send the base angle to its p-th circular
  // successor: 2*theta_0 = sum of the first p slots (mod 1). Two solutions;
  // the smaller one is the marked representative, its half-shift is the
  // q-m labelled cycle.
  Rational partial(0);
  for (int j = 0; j < pm; ++j) partial += slot[j];
  Rational t0 = (partial * Rational(1, 2)).mod1();
  Rational t0b = (t0 + Rational(1, 2)).mod1();
  Rational base = std::min(t0, t0b);

  std::vector<Angle> angs;
  Rational acc = base;
  for (int j = 0; j < q; ++j) {
    angs.emplace_back(acc.mod1());
    acc += slot[j];
  }
  RotationCycle c = build_cycle(angs, 3, Angle(base));
  // Orbit sanity: multiplication by 3 must permute the set with rotation p.
  if (!c.rotation || !(c.rotation->mod1() == Rational(pm, q).mod1()))
    throw std::logic_error("theta_m: reconstructed cycle has wrong rotation number");
  for (const auto& a : c.angles) {
    Angle im = mul_mod1(a, 3);
    if (std::find(c.angles.begin(), c.angles.end(), im) == c.angles.end())
      throw std::logic_error("theta_m: reconstructed set not invariant");
  }
  return c;
}

RotationCycle reflect_cycle(const RotationCycle& c) {
  std::vector<Angle> angs;
  for (const auto& a : c.angles) angs.emplace_back((Rational(1) - a.value).mod1());
  // The marked gap [theta_0, theta_1] reflects to the gap starting at
  // 1 - theta_1, keeping its length.
  const int q = c.length();
  Angle theta1 = c.angles[(c.base_index + 1) % q];
  Angle new_base((Rational(1) - theta1.value).mod1());
  return build_cycle(std::move(angs), c.multiplier_d, new_base);
}

std::vector<Angle> angle_preimages(const Angle& t, int d, int depth) {
  if (depth < 1) throw std::invalid_argument("angle_preimages: depth must be >= 1");
  BigInt dk = 1;
  for (int i = 0; i < depth; ++i) dk *= d;
  std::vector<Angle> out;
  for (BigInt k = 0; k < dk; ++k) {
    Rational s = (t.value + Rational(k)) / Rational(dk);
    out.emplace_back(s.mod1());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace parabolica
