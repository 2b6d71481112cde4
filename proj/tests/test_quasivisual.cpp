#include "doctest.h"

#include "csst/quasivisual.hpp"
#include "csst/subdivision.hpp"

#include "oracles.hpp"

using namespace csst;

namespace {

/// Test-local cover with hand-specified exact data.
class ExplicitCover : public Cover {
 public:
  struct Level {
    std::vector<Rational> diam_sq;
    std::vector<std::vector<int>> touch;
  };
  std::vector<Level> levels;

  int max_level() const override { return static_cast<int>(levels.size()) - 1; }
  int tile_count(int level) const override {
    return static_cast<int>(levels[level].diam_sq.size());
  }
  SqBracket diam_sq(int level, int tile) const override {
    return {levels[level].diam_sq[tile], levels[level].diam_sq[tile], true};
  }
  SqBracket dist_sq(int l1, int t1, int l2, int t2) const override {
    if (touches(l1, t1, l2, t2)) return {Rational(0), Rational(0), true};
    return {Rational(1), Rational(1), true};
  }
  bool touches(int l1, int t1, int l2, int t2) const override {
    if (l1 != l2) return true;  // nested single-chain covers
    if (t1 == t2) return true;
    for (int x : levels[l1].touch[t1])
      if (x == t2) return true;
    return false;
  }
  std::string tile_name(int level, int tile) const override {
    return "E" + std::to_string(level) + "." + std::to_string(tile);
  }
};

}  // namespace

TEST_CASE("CSST level tiles form a quasi-visual approximation") {
  WordCover cover = WordCover::full_levels(5);
  QvReport rep = check_quasivisual(cover, 5);
  CHECK(rep.pass);
  // same-level diameters are all equal, so condition (i) has constant 1
  for (const auto& c : rep.same_level_diam.per_level) CHECK(c.value_sq == Rational(1));
  CHECK(rep.shrink_pass);
  CHECK(rep.k0 == 1);
  CHECK(rep.lambda == doctest::Approx(0.5));
  CHECK(rep.rho == doctest::Approx(0.5));
  CHECK(rep.tau > 0);
  CHECK(rep.tau < 1);
  CHECK(rep.alpha > 0);
  CHECK(rep.alpha <= 1);
}

TEST_CASE("single-level cover passes vacuously") {
  WordCover cover(std::vector<std::vector<Word>>{{Word()}});
  QvReport rep = check_quasivisual(cover, 0);
  CHECK(rep.pass);
  CHECK(rep.k0 == 0);
  CHECK(rep.same_level_diam.per_level.at(0).value_sq == Rational(1));
}

TEST_CASE("a cover that never shrinks fails condition (iv)") {
  std::vector<std::vector<Word>> levels(4, std::vector<Word>{Word()});
  WordCover cover(std::move(levels));
  QvReport rep = check_quasivisual(cover, 3);
  CHECK_FALSE(rep.pass);
  CHECK_FALSE(rep.shrink_pass);
  CHECK(rep.same_level_diam.pass);
  CHECK(rep.disjoint_dist.pass);
}

TEST_CASE("visual check at delta = 1/2 on the CSST cover") {
  WordCover cover = WordCover::full_levels(5);
  VisualReport rep = check_visual(cover, Rational(1, 2));
  CHECK(rep.pass);
  for (const auto& c : rep.diam_upper) CHECK(c.value_sq == Rational(4));  // ratio 2
  for (const auto& c : rep.diam_lower) CHECK(c.value_sq == Rational(4));
}

TEST_CASE("visual check fails at delta = 0.9 by geometric drift") {
  WordCover cover = WordCover::full_levels(5);
  VisualReport rep = check_visual(cover, Rational(9, 10));
  CHECK_FALSE(rep.pass);
  Rational first = rep.diam_upper.front().value_sq;
  Rational last = rep.diam_upper.back().value_sq;
  CHECK(last < first);  // the ratio drifts geometrically with depth
}

TEST_CASE("nested halving segments pass the visual check at delta = 1/2") {
  ExplicitCover cover;
  for (int n = 0; n <= 4; ++n) {
    ExplicitCover::Level lvl;
    Rational d = pow2(-n);
    lvl.diam_sq = {d * d};
    lvl.touch = {{}};
    cover.levels.push_back(lvl);
  }
  VisualReport rep = check_visual(cover, Rational(1, 2));
  CHECK(rep.pass);
  for (const auto& c : rep.diam_upper) CHECK(c.value_sq == Rational(1));
  CHECK(rep.dist_lower.empty());  // no disjoint pairs anywhere
  QvReport qv = check_quasivisual(cover, 4);
  CHECK(qv.pass);
}

TEST_CASE("visual pass implies quasi-visual pass on tree covers") {
  auto m = build_jn(6);
  SubdivisionSequence seq = build_levels(m.tree, {Rational(1, 4), 2});
  std::vector<Decomposition> decomps;
  for (auto& l : seq.levels) decomps.push_back(l.decomp);
  TreeCover cover(m.tree, decomps);
  QvReport qv = check_quasivisual(cover, 2);
  CHECK(qv.pass);
}

TEST_CASE("pairing index of -1 and 1 is 1") {
  WordCover cover = WordCover::full_levels(2);
  int x = cover.add_point(Anchor::minus_one());
  int y = cover.add_point(Anchor::plus_one());
  PairingIndex pi = pairing_index(cover, x, y);
  CHECK(pi.m == 1);
  CHECK(pi.diam_at_m == doctest::Approx(1.0));  // diam(T_1) = 1
  CHECK(pi.ratio == doctest::Approx(2.0));      // d(-1, 1) = 2
}

TEST_CASE("pairing index censors pairs that never separate") {
  WordCover cover = WordCover::full_levels(2);
  int x = cover.add_point(Anchor::minus_one());
  int y = cover.add_point(Anchor{Word("111"), 0});  // deep inside T_11
  CHECK_THROWS_AS(pairing_index(cover, x, y), Error);
}

TEST_CASE("pairing index across the -1/2 pinch point") {
  WordCover cover = WordCover::full_levels(3);
  int x = cover.add_point(Anchor::minus_one());
  int y = cover.add_point(Anchor{Word("12"), 0});  // g_12(0) inside T_12
  PairingIndex pi = pairing_index(cover, x, y);
  CHECK(pi.m == 2);  // T_11 and T_12 still share -1/2 at level 2
}

TEST_CASE("d(x,y) stays comparable to diam at the pairing level") {
  // the bracket constant measured at level budgets 5 and 6 differs < 2x
  auto points = branch_vertices(4);  // words of length <= 3
  auto measure = [&](int depth) {
    WordCover cover = WordCover::full_levels(depth);
    std::vector<int> ids;
    for (const auto& b : points) ids.push_back(cover.add_point(Anchor::vertex(b.word)));
    double cstar = 1.0;
    int used = 0;
    for (std::size_t i = 0; i < ids.size(); ++i)
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        try {
          PairingIndex pi = pairing_index(cover, ids[i], ids[j]);
          REQUIRE(pi.ratio > 0);
          cstar = std::max(cstar, std::max(pi.ratio, 1.0 / pi.ratio));
          ++used;
        } catch (const Error& e) {
          REQUIRE(e.code() == Errc::BudgetTooShallow);
        }
      }
    REQUIRE(used > 0);
    return cstar;
  };
  double c5 = measure(5);
  double c6 = measure(6);
  CHECK(std::max(c5, c6) / std::min(c5, c6) < 2.0);
}

TEST_CASE("distortion fit on identical metrics is exactly the identity") {
  auto m = build_jn(3);
  MetricPair mp;
  mp.n = static_cast<std::size_t>(m.tree.vertex_count());
  mp.d1_sq = [&](std::size_t i, std::size_t j) {
    return m.tree.dist_sq(static_cast<int>(i), static_cast<int>(j));
  };
  mp.d2_sq = mp.d1_sq;
  DistortionFit fit = fit_distortion(mp, 400, 7);
  CHECK(fit.coefficient == 1.0);
  CHECK(fit.alpha == 1.0);
  CHECK(fit.max_residual == 0.0);
}

TEST_CASE("distortion fit recovers the snowflake exponent exactly") {
  auto m = build_jn(3);
  MetricPair mp;
  mp.n = static_cast<std::size_t>(m.tree.vertex_count());
  mp.d1_sq = [&](std::size_t i, std::size_t j) {
    return m.tree.dist_sq(static_cast<int>(i), static_cast<int>(j));
  };
  // d2 = d1^{1/2}, so the squared snowflake distance is the path length
  mp.d2_sq = [&](std::size_t i, std::size_t j) {
    return m.tree.path_length(static_cast<int>(i), static_cast<int>(j));
  };
  DistortionFit fit = fit_distortion(mp, 400, 11);
  CHECK(fit.alpha == 0.5);
  CHECK(fit.coefficient == 1.0);
  CHECK(fit.max_residual == 0.0);
}

TEST_CASE("distortion fit is invariant under rescaling either metric") {
  auto m = build_jn(3);
  MetricPair a, b;
  a.n = b.n = static_cast<std::size_t>(m.tree.vertex_count());
  a.d1_sq = [&](std::size_t i, std::size_t j) {
    return m.tree.dist_sq(static_cast<int>(i), static_cast<int>(j));
  };
  a.d2_sq = a.d1_sq;
  b.d1_sq = [&](std::size_t i, std::size_t j) {
    return Rational(81) * m.tree.dist_sq(static_cast<int>(i), static_cast<int>(j));
  };
  b.d2_sq = [&](std::size_t i, std::size_t j) {
    return Rational(1, 49) * m.tree.dist_sq(static_cast<int>(i), static_cast<int>(j));
  };
  DistortionFit fa = fit_distortion(a, 300, 3);
  DistortionFit fb = fit_distortion(b, 300, 3);
  CHECK(fa.alpha == fb.alpha);
  CHECK(fa.coefficient == fb.coefficient);
  CHECK(fa.max_residual == fb.max_residual);
  CHECK(fa.triples == fb.triples);
}

TEST_CASE("distortion fit rejects degenerate input") {
  MetricPair mp;
  mp.n = 4;
  mp.d1_sq = [](std::size_t, std::size_t) { return Rational(0); };
  mp.d2_sq = [](std::size_t, std::size_t) { return Rational(1); };
  CHECK_THROWS_AS(fit_distortion(mp, 50, 1), Error);
  MetricPair tiny;
  tiny.n = 2;
  tiny.d1_sq = tiny.d2_sq = [](std::size_t, std::size_t) { return Rational(1); };
  CHECK_THROWS_AS(fit_distortion(tiny, 50, 1), Error);
}

TEST_CASE("distortion fit is deterministic under the seed") {
  auto m = build_jn(2);
  MetricPair mp;
  mp.n = static_cast<std::size_t>(m.tree.vertex_count());
  mp.d1_sq = [&](std::size_t i, std::size_t j) {
    return m.tree.dist_sq(static_cast<int>(i), static_cast<int>(j));
  };
  mp.d2_sq = [&](std::size_t i, std::size_t j) {
    return m.tree.path_length(static_cast<int>(i), static_cast<int>(j));
  };
  DistortionFit f1 = fit_distortion(mp, 200, 42);
  DistortionFit f2 = fit_distortion(mp, 200, 42);
  CHECK(f1.alpha == f2.alpha);
  CHECK(f1.coefficient == f2.coefficient);
  CHECK(f1.triples == f2.triples);
}
