#include <numeric>
#include <set>

#include "doctest.h"
#include "parabolica/angles.hpp"

using namespace parabolica;

namespace {

long long binom(int n, int k) {
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

bool contains_angle(const RotationCycle& c, const Rational& v) {
  for (const auto& a : c.angles)
    if (a.value == v.mod1()) return true;
  return false;
}

// Independent rotation-number recomputation: the circular-order permutation
// induced by multiplication must be i -> i + p.
bool rotation_consistent(const RotationCycle& c, int p, int q) {
  for (int i = 0; i < c.length(); ++i) {
    Angle im = mul_mod1(c.angles[i], c.multiplier_d);
    int j = -1;
    for (int k = 0; k < c.length(); ++k)
      if (c.angles[k] == im) j = k;
    if (j < 0) return false;
    if (((j - i) % q + q) % q != p % q) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("orbit_under_mul basics") {
  {
    OrbitResult r = orbit_under_mul(Angle(Rational(1, 8)), 3);
    CHECK(r.periodic);
    CHECK(r.cycle.length() == 2);
    CHECK(contains_angle(r.cycle, Rational(1, 8)));
    CHECK(contains_angle(r.cycle, Rational(3, 8)));
    REQUIRE(r.cycle.rotation.has_value());
    CHECK(*r.cycle.rotation == Rational(1, 2));
  }
  {
    OrbitResult r = orbit_under_mul(Angle(Rational(0)), 3);
    CHECK(r.periodic);
    CHECK(r.cycle.length() == 1);
    CHECK(*r.cycle.rotation == Rational(0));
  }
  {
    OrbitResult r = orbit_under_mul(Angle(Rational(1, 2)), 3);
    CHECK(r.periodic);
    CHECK(r.cycle.length() == 1);
    CHECK(contains_angle(r.cycle, Rational(1, 2)));
  }
  {
    // preperiodic: 1/6 -> 1/2 (fixed)
    OrbitResult r = orbit_under_mul(Angle(Rational(1, 6)), 3);
    CHECK(!r.periodic);
    CHECK(r.preperiod == 1);
    CHECK(r.cycle.length() == 1);
  }
}

TEST_CASE("enumerate_cycles: Goldberg counts for d in {2,3}, q <= 8") {
  for (int d : {2, 3}) {
    for (int q = 1; q <= 8; ++q) {
      for (int p = (q == 1 ? 1 : 1); p <= q; ++p) {
        if (std::gcd(p, q) != 1) continue;
        auto cycles = enumerate_cycles(d, p, q);
        CHECK(static_cast<long long>(cycles.size()) == binom(d + q - 2, q));
        for (const auto& c : cycles) CHECK(rotation_consistent(c, p, q));
      }
    }
  }
  // d=3, q+1 cycles; d=2 uniqueness
  CHECK(enumerate_cycles(3, 1, 2).size() == 3);
  CHECK(enumerate_cycles(2, 1, 3).size() == 1);
}

TEST_CASE("enumerate_cycles d=3 p/q=1/2 gives the three eighth cycles") {
  auto cycles = enumerate_cycles(3, 1, 2);
  REQUIRE(cycles.size() == 3);
  CHECK(contains_angle(cycles[0], Rational(1, 8)));
  CHECK(contains_angle(cycles[0], Rational(3, 8)));
  CHECK(contains_angle(cycles[1], Rational(1, 4)));
  CHECK(contains_angle(cycles[1], Rational(3, 4)));
  CHECK(contains_angle(cycles[2], Rational(5, 8)));
  CHECK(contains_angle(cycles[2], Rational(7, 8)));
}

TEST_CASE("theta_m closed forms and examples") {
  {
    RotationCycle c = theta_m(1, 2, 0);
    CHECK(c.gaps[0] == Rational(3, 4));
    CHECK(c.base_angle().value == Rational(3, 8));
    CHECK(contains_angle(c, Rational(1, 8)));
  }
  {
    RotationCycle c = theta_m(1, 2, 1);
    CHECK(c.gaps[0] == Rational(1, 2));
    CHECK(contains_angle(c, Rational(1, 4)));
    CHECK(contains_angle(c, Rational(3, 4)));
  }
  {
    RotationCycle c = theta_m(1, 2, 2);
    CHECK(contains_angle(c, Rational(7, 8)));
    CHECK(contains_angle(c, Rational(5, 8)));
  }
  {
    RotationCycle c = theta_m(1, 1, 0);
    CHECK(c.length() == 1);
    CHECK(contains_angle(c, Rational(0)));
    RotationCycle c1 = theta_m(1, 1, 1);
    CHECK(contains_angle(c1, Rational(1, 2)));
  }

  // closed form for the base gap, all q <= 8, exact equality
  for (int q = 1; q <= 8; ++q) {
    for (int p = 1; p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      Rational three_q = pow_int(3, q);
      Rational lead = three_q / (three_q - Rational(1));
      for (int m = 0; m <= q / 2; ++m) {
        RotationCycle c = theta_m(p, q, m);
        Rational want = (m == 0) ? lead * Rational(2, 3)
                                 : lead * (Rational(1) / pow_int(3, m + 1) + Rational(1, 3));
        CHECK(c.gaps[0] == want);
        // chain form of d_m as well (m != 0)
        if (m != 0) {
          auto chain = theta_gap_chain(p, q, m);
          Rational want_dm = lead * (Rational(1) / pow_int(3, q + 1 - m) + Rational(1, 3));
          CHECK(chain[m] == want_dm);
        }
        Rational sum(0);
        for (const auto& g : c.gaps) sum += g;
        CHECK(sum == Rational(1));
      }
    }
  }
}

TEST_CASE("theta_m family: distinct, exhaustive, half-shift pairing") {
  for (int q = 1; q <= 6; ++q) {
    for (int p = 1; p <= q; ++p) {
      if (std::gcd(p, q) != 1) continue;
      std::vector<RotationCycle> thetas;
      for (int m = 0; m <= q; ++m) thetas.push_back(theta_m(p, q, m));

      // pairwise distinct as sets
      for (int i = 0; i <= q; ++i)
        for (int j = i + 1; j <= q; ++j) CHECK(!thetas[i].same_set(thetas[j]));

      // half-shift: theta_m + 1/2 = theta_{q-m}
      for (int m = 0; m <= q; ++m) CHECK(thetas[m].shifted_half().same_set(thetas[q - m]));

      // jointly exhaust the Goldberg cycles for d = 3
      auto all = enumerate_cycles(3, p, q);
      REQUIRE(all.size() == static_cast<size_t>(q + 1));
      for (const auto& th : thetas) {
        bool found = false;
        for (const auto& c : all)
          if (th.same_set(c)) found = true;
        CHECK(found);
      }
    }
  }
}

TEST_CASE("reflect_cycle flips the rotation number") {
  {
    RotationCycle c = theta_m(1, 2, 0);
    RotationCycle r = reflect_cycle(c);
    CHECK(contains_angle(r, Rational(7, 8)));
    CHECK(contains_angle(r, Rational(5, 8)));
    REQUIRE(r.rotation.has_value());
    CHECK(*r.rotation == Rational(1, 2));  // 1 - 1/2
  }
  {
    OrbitResult fixed = orbit_under_mul(Angle(Rational(0)), 3);
    RotationCycle r = reflect_cycle(fixed.cycle);
    CHECK(contains_angle(r, Rational(0)));
  }
  {
    auto cycles = enumerate_cycles(2, 1, 3);
    RotationCycle r = reflect_cycle(cycles[0]);
    REQUIRE(r.rotation.has_value());
    CHECK(*r.rotation == Rational(2, 3));
    CHECK(rotation_consistent(r, 2, 3));
  }
}

TEST_CASE("angle_preimages") {
  {
    auto pre = angle_preimages(Angle(Rational(0)), 3, 1);
    REQUIRE(pre.size() == 3);
    CHECK(pre[0].value == Rational(0));
    CHECK(pre[1].value == Rational(1, 3));
    CHECK(pre[2].value == Rational(2, 3));
  }
  {
    auto pre = angle_preimages(Angle(Rational(1, 8)), 3, 1);
    REQUIRE(pre.size() == 3);
    CHECK(pre[0].value == Rational(1, 24));
    CHECK(pre[1].value == Rational(9, 24));
    CHECK(pre[2].value == Rational(17, 24));
  }
  CHECK(angle_preimages(Angle(Rational(1, 7)), 3, 3).size() == 27);
  // every preimage maps back
  for (const auto& s : angle_preimages(Angle(Rational(2, 5)), 3, 2)) {
    Angle img = mul_mod1(mul_mod1(s, 3), 3);
    CHECK(img.value == Rational(2, 5));
  }
}

TEST_CASE("dyadic parity claim: (t+1)/2 is q-periodic under doubling iff m odd") {
  for (int q = 1; q <= 10; ++q) {
    long long N = (1ll << q) - 1;
    for (long long m = 0; m < N; ++m) {
      Rational t(m, N);
      Rational s = ((t + Rational(1)) * Rational(1, 2)).mod1();
      // fixed under multiplication by 2^q?
      Rational img = (s * pow_int(2, q)).mod1();
      bool periodic = (img == s);
      CHECK(periodic == (m % 2 == 1));
    }
  }
}
