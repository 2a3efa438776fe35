#include <cmath>
#include <random>

#include "doctest.h"
#include "parabolica/address.hpp"
#include "parabolica/covering.hpp"
#include "parabolica/fatou.hpp"

using namespace parabolica;

TEST_CASE("petal chain labels follow P^n_k -> P^{n-1}_{k+p}") {
  PetalChain ch = petal_chain(2, 5, 3, 4);
  REQUIRE(!ch.labels.empty());
  for (size_t i = 0; i + 1 < ch.labels.size(); ++i) {
    CHECK(ch.labels[i + 1].n == ch.labels[i].n - 1);
    CHECK(ch.labels[i + 1].k == ((ch.labels[i].k + 2) % 5 + 5) % 5);
  }
  for (const auto& lab : ch.labels) CHECK(((lab.n * 2 + lab.k) % 5 + 5) % 5 == 3);
}

TEST_CASE("quadratic model chart: normalization and Abel equation") {
  for (auto pq : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}, {1, 3}, {2, 3}}) {
    Slice s = make_slice(pq.first, pq.second);
    auto chart = FatouChart::model(s);
    REQUIRE(chart.has_value());
    // phi(critical point) = 0 by normalization
    auto ev = chart->extended_value(-0.5 * s.lambda);
    REQUIRE(ev.has_value());
    CHECK(std::abs(ev->value) < 1e-7);

    // Abel equation on a small grid in the petal
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        cplx xi(3.0 + 2.0 * i, -2.0 + 1.4 * j);
        auto z = chart->phi_inverse(xi);
        REQUIRE(z.has_value());
        auto p1 = chart->phi(*z);
        auto p2 = chart->phi(chart->apply_return(*z));
        REQUIRE(p1.has_value());
        REQUIRE(p2.has_value());
        worst = std::max(worst, std::abs(*p2 - *p1 - 1.0));
        // phi_inverse consistency
        CHECK(std::abs(*p1 - xi) < 1e-7);
      }
    }
    CHECK(worst < 1e-6);
  }
}

TEST_CASE("petal forward invariance on boundary samples") {
  Slice s = make_slice(1, 2);
  auto chart = FatouChart::model(s);
  REQUIRE(chart.has_value());
  // cut at Re = 1 (normalized cut 0 plus safety margin): boundary samples map in
  for (int j = 0; j < 12; ++j) {
    cplx xi(1.0, -3.0 + 0.5 * j);
    auto z = chart->phi_inverse(xi);
    if (!z) continue;
    auto p2 = chart->phi(chart->apply_return(*z));
    REQUIRE(p2.has_value());
    CHECK(p2->real() > 1.0);
  }
}

TEST_CASE("extended value shifts by exactly 1 under the return map") {
  Slice s = make_slice(1, 3);
  ModelBasin mb(s);
  REQUIRE(mb.valid());
  auto z = mb.chart().phi_inverse(cplx(4.0, 0.7));
  REQUIRE(z.has_value());
  cplx w = *z;
  auto a1 = mb.extend(w);
  cplx wq = w;
  for (int i = 0; i < s.q; ++i) wq = mb.P(wq);
  auto a2 = mb.extend(wq);
  REQUIRE(a1.has_value());
  REQUIRE(a2.has_value());
  CHECK(std::abs(a2->value - a1->value - 1.0) < 1e-7);
  CHECK(a2->track == a1->track);
}

TEST_CASE("address: point already deep has empty itinerary") {
  Slice s = make_slice(1, 2);
  ModelBasin mb(s);
  REQUIRE(mb.valid());
  auto z = mb.chart().phi_inverse(cplx(40.0, 0.0));
  REQUIRE(z.has_value());
  auto addr = mb.extend(*z);
  REQUIRE(addr.has_value());
  CHECK(addr->steps == 0);
  CHECK(addr->bits.empty());
  auto back = mb.invert(*addr);
  REQUIRE(back.has_value());
  CHECK(std::abs(*back - *z) < 1e-8);
}

TEST_CASE("two preimages of a petal point: same value, complementary bit, same image") {
  Slice s = make_slice(1, 1);
  ModelBasin mb(s);
  REQUIRE(mb.valid());
  auto deep = mb.chart().phi_inverse(cplx(6.0, 0.4));
  REQUIRE(deep.has_value());
  auto [z1, z2] = mb.P_preimages(*deep);
  auto a1 = mb.extend(z1);
  auto a2 = mb.extend(z2);
  REQUIRE(a1.has_value());
  REQUIRE(a2.has_value());
  CHECK(std::abs(a1->value - a2->value) < 1e-7);
  REQUIRE(a1->steps >= 1);
  REQUIRE(a2->steps >= 1);
  CHECK(a1->bits[0] != a2->bits[0]);
  CHECK(std::abs(mb.P(z1) - mb.P(z2)) < 1e-12);
}

TEST_CASE("address round trip on random basin points") {
  for (auto pq : std::vector<std::pair<int, int>>{{1, 1}, {1, 2}}) {
    Slice s = make_slice(pq.first, pq.second);
    ModelBasin mb(s);
    REQUIRE(mb.valid());
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int done = 0, tries = 0;
    while (done < 40 && tries < 800) {
      ++tries;
      BasinAddress addr;
      addr.track = int(u(rng) * s.q) % s.q;
      int depth = int(u(rng) * 3.0);
      addr.steps = depth * s.q;
      addr.value = cplx(-0.4 - u(rng) - double(addr.steps) / s.q, 2.0 * (u(rng) - 0.5));
      for (int j = 0; j < addr.steps; ++j) {
        addr.sectors.push_back(((addr.track + j * s.p) % s.q + s.q) % s.q);
        addr.bits.push_back(u(rng) < 0.5 ? 0 : 1);
      }
      auto z = mb.invert(addr);
      if (!z) continue;
      auto back = mb.extend(*z);
      if (!back) continue;
      auto z2 = mb.invert(*back);
      if (!z2) continue;
      CHECK(std::abs(*z - *z2) < 1e-8);
      ++done;
    }
    CHECK(done >= 20);
  }
}

TEST_CASE("dyadic marks double under the shift") {
  BasinAddress addr;
  addr.bits = {1, 0, 1};
  CHECK(addr.dyadic_mark(0) == Rational(5, 8));
  CHECK(addr.dyadic_mark(1) == Rational(1, 4));
  CHECK(addr.dyadic_mark(2) == Rational(1, 2));
}
