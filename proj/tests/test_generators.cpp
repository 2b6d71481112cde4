#include "doctest.h"

#include "csst/generators.hpp"
#include "csst/tree_ops.hpp"

#include "oracles.hpp"

using namespace csst;

TEST_CASE("the level-1 model is the tripod geometry") {
  auto t = make_jn_model(1);
  CHECK(t.edge_count() == 6);
  CHECK(t.vertex_count() == 7);
  int triples = 0;
  for (int v = 0; v < t.vertex_count(); ++v)
    if (t.degree(v) == 3) ++triples;
  CHECK(triples == 1);
}

TEST_CASE("perturbed models keep the combinatorial structure") {
  PerturbSpec spec;
  spec.level = 3;
  spec.factor_lo = Rational(1);
  spec.factor_hi = Rational(2);
  spec.seed = 4;
  auto base = make_jn_model(3);
  auto t = make_perturbed_model(spec);
  REQUIRE(t.vertex_count() == base.vertex_count());
  REQUIRE(t.edge_count() == base.edge_count());
  for (int v = 0; v < t.vertex_count(); ++v) CHECK(t.degree(v) == base.degree(v));
  for (int e = 0; e < t.edge_count(); ++e) {
    CHECK(t.edge(e).len >= base.edge(e).len);
    CHECK(t.edge(e).len <= base.edge(e).len * 2);
  }
}

TEST_CASE("random trivalent trees have the requested branch structure") {
  for (int k : {5, 12, 20}) {
    auto t = make_random_trivalent({k, static_cast<std::uint64_t>(k * 7 + 1)});
    int branch = 0;
    for (int v = 0; v < t.vertex_count(); ++v) {
      CHECK(t.degree(v) <= 3);
      if (t.degree(v) == 3) ++branch;
    }
    CHECK(branch == k);
  }
}

TEST_CASE("excursions are non-negative bridges, deterministic under the seed") {
  for (std::uint64_t seed : {0ULL, 1ULL, 17ULL}) {
    auto e = brownian_excursion(64, seed);
    CHECK(e.units.front() == 0);
    CHECK(e.units.back() == 0);
    for (long u : e.units) CHECK(u >= 0);
    auto e2 = brownian_excursion(64, seed);
    CHECK(e.units == e2.units);
  }
  CHECK_THROWS_AS(brownian_excursion(63, 0), Error);
}

TEST_CASE("the excursion pseudo-metric vanishes on the diagonal") {
  auto e = brownian_excursion(32, 5);
  for (std::size_t s = 0; s <= 32; ++s) CHECK(excursion_dist_units(e, s, s) == 0);
}

TEST_CASE("the excursion pseudo-metric satisfies the triangle inequality") {
  for (std::uint64_t seed : {2ULL, 3ULL}) {
    auto e = brownian_excursion(16, seed);
    for (std::size_t a = 0; a <= 16; ++a)
      for (std::size_t b = 0; b <= 16; ++b)
        for (std::size_t c = 0; c <= 16; ++c)
          CHECK(excursion_dist_units(e, a, c) <=
                excursion_dist_units(e, a, b) + excursion_dist_units(e, b, c));
  }
}

TEST_CASE("the tent excursion quotients to a segment") {
  ExcursionSample tent;
  tent.resolution = 8;
  tent.scale = Rational(1, 4);  // e(t) = 2 min(t, 1-t) sampled on eighths
  tent.units = {0, 1, 2, 3, 4, 3, 2, 1, 0};
  CHECK(excursion_dist_units(tent, 0, 4) == 4);  // d_e(0, 1/2) = e(1/2) = 1
  CHECK(excursion_dist_units(tent, 0, 8) == 0);  // endpoints are identified
  CrtQuotient q = crt_quotient(tent);
  CHECK(q.tree.vertex_count() == 2);
  CHECK(q.tree.edge_count() == 1);
  CHECK(q.tree.edge(0).len == Rational(1));
  CHECK(q.vertex_of_grid[0] == q.vertex_of_grid[8]);
}

TEST_CASE("degenerate excursions are rejected") {
  ExcursionSample zero;
  zero.resolution = 4;
  zero.scale = Rational(1, 2);
  zero.units = {0, 0, 0, 0, 0};
  CHECK_THROWS_AS(crt_quotient(zero), Error);
}

TEST_CASE("the quotient path metric reproduces d_e on representatives") {
  for (std::uint64_t seed : {1ULL, 6ULL, 9ULL}) {
    for (std::size_t m : {32ULL, 64ULL}) {
      auto e = brownian_excursion(m, seed);
      CrtQuotient q = crt_quotient(e);
      for (std::size_t s = 0; s <= m; ++s)
        for (std::size_t t = s; t <= m; ++t) {
          int vs = q.vertex_of_grid[s], vt = q.vertex_of_grid[t];
          if (vs < 0 || vt < 0) continue;
          Rational expect = e.scale * excursion_dist_units(e, s, t);
          CHECK(q.tree.path_length(vs, vt) == expect);
        }
    }
  }
}

TEST_CASE("quotients record their maximum degree") {
  auto e = brownian_excursion(256, 3);
  CrtQuotient q = crt_quotient(e);
  CHECK(q.max_degree >= 3);
  CHECK(q.tree.vertex_count() >= 2);
}

TEST_CASE("epsilon merging coarsens the quotient") {
  auto e = brownian_excursion(128, 11);
  CrtQuotient fine = crt_quotient(e);
  CrtQuotient coarse = crt_quotient(e, e.scale * 2);
  CHECK(coarse.tree.vertex_count() <= fine.tree.vertex_count());
}

TEST_CASE("separation constants of quotient trees are measurable") {
  auto e = brownian_excursion(256, 8);
  CrtQuotient q = crt_quotient(e);
  auto rep = geometric_constants(q.tree);
  if (rep.separation) {
    CHECK(rep.separation->ratio_sq > 0);
  }
}
