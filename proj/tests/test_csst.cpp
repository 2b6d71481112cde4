#include "doctest.h"

#include "csst/csst.hpp"

#include "oracles.hpp"

#include <set>

using namespace csst;

namespace {
DyadicPoint half(int a, int b) { return DyadicPoint(Int(a), Int(b), 1); }
}  // namespace

TEST_CASE("images of 0 under the three maps") {
  CHECK(apply_word(Word("1"), DyadicPoint::integer(0, 0)) == half(-1, 0));
  CHECK(apply_word(Word("2"), DyadicPoint::integer(0, 0)) == half(1, 0));
  CHECK(apply_word(Word("3"), DyadicPoint::integer(0, 0)) == half(0, 1));
}

TEST_CASE("empty word acts as the identity") {
  DyadicPoint z(Int(5), Int(-3), 3);
  CHECK(apply_word(Word(), z) == z);
}

TEST_CASE("g_11(1) = -1/2") {
  CHECK(apply_word(Word("11"), DyadicPoint::integer(1, 0)) == half(-1, 0));
}

TEST_CASE("dyadic points canonicalize") {
  DyadicPoint z(Int(2), Int(4), 1);
  CHECK(z.k == 0);
  CHECK(z.a == 1);
  CHECK(z.b == 2);
}

TEST_CASE("tile_info on the root, a 1-tile and a 2-tile") {
  auto root = tile_info(Word());
  CHECK(root.boundary.empty());
  CHECK(root.diam == Rational(2));

  auto t3 = tile_info(Word("3"));
  REQUIRE(t3.boundary.size() == 1);
  CHECK(t3.boundary[0] == DyadicPoint::integer(0, 0));
  CHECK(t3.diam == Rational(1));

  auto t13 = tile_info(Word("13"));
  REQUIRE(t13.boundary.size() == 1);
  CHECK(t13.boundary[0] == half(-1, 0));
  CHECK(t13.diam == Rational(1, 2));
}

TEST_CASE("tile boundaries match the enumeration oracle up to length 5") {
  for (const Word& w : words_up_to_length(5)) {
    auto info = tile_info(w);
    auto expect = oracles::brute_boundary(w);
    CHECK(info.boundary == expect);
    if (!w.empty() && w.last() == 3) CHECK(info.boundary.size() == 1);
    if (!w.empty()) {
      CHECK(info.boundary.size() >= 1);
      CHECK(info.boundary.size() <= 2);
    }
  }
}

TEST_CASE("branch vertex enumeration") {
  auto one = branch_vertices(1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].word == Word());
  CHECK(one[0].point == DyadicPoint::integer(0, 0));
  CHECK(one[0].height == Rational(1));

  auto two = branch_vertices(2);
  REQUIRE(two.size() == 4);
  CHECK(two[1].height == Rational(1, 2));

  for (int n : {3, 5}) {
    auto vs = branch_vertices(n);
    std::size_t expect = 1;
    std::size_t p = 1;
    for (int l = 1; l < n; ++l) {
      p *= 3;
      expect += p;
    }
    CHECK(vs.size() == expect);  // (3^n - 1) / 2
    std::set<DyadicPoint> pts;
    for (const auto& v : vs) pts.insert(v.point);
    CHECK(pts.size() == vs.size());  // pairwise distinct, exactly
  }
  CHECK_THROWS_AS(branch_vertices(14), Error);
}

TEST_CASE("exact squared euclidean distances") {
  CHECK(euclidean_dist_sq(half(-1, 0), half(1, 0)) == Rational(1));
  CHECK(euclidean_dist_sq(half(1, 0), half(1, 0)) == Rational(0));
  CHECK(euclidean_dist_sq(DyadicPoint::integer(0, 0), half(0, 1)) == Rational(1, 4));
}

TEST_CASE("geodesic distances by the self-similar reduction") {
  CHECK(geodesic_distance(Anchor::minus_one(), Anchor::plus_one()) == Rational(2));
  CHECK(geodesic_distance(Word(), Word("1")) == Rational(1, 2));
  CHECK(geodesic_distance(Word("1"), Word("2")) == Rational(1));
  CHECK(geodesic_distance(Word("12"), Word("12")) == Rational(0));
}

TEST_CASE("geodesic distance agrees with the shortest-path oracle on J_5") {
  auto m = build_jn(5);
  auto vs = branch_vertices(4);  // word length <= 3
  for (const auto& a : vs) {
    int va = m.vertex_of_word.at(a.word);
    auto dist = oracles::bfs_dist(m.tree, va);
    for (const auto& b : vs) {
      int vb = m.vertex_of_word.at(b.word);
      CHECK(geodesic_distance(a.word, b.word) == dist[vb]);
    }
  }
}

TEST_CASE("geodesic anchors reach the leaves") {
  // rho from -1 to the tip i goes through 0
  CHECK(geodesic_distance(Anchor::minus_one(), Anchor::leaf_i()) == Rational(2));
  CHECK(geodesic_distance(Anchor::vertex(Word("")), Anchor::leaf_i()) == Rational(1));
}

TEST_CASE("J_0 is the segment from -1 to 1") {
  auto m = build_jn(0);
  CHECK(m.tree.edge_count() == 2);
  CHECK(m.tree.vertex_count() == 3);
  int a = oracles::vertex_at(m, DyadicPoint::integer(-1, 0));
  int b = oracles::vertex_at(m, DyadicPoint::integer(1, 0));
  CHECK(m.tree.path_length(a, b) == Rational(2));
}

TEST_CASE("J_1 is the tripod") {
  auto m = build_jn(1);
  CHECK(m.tree.edge_count() == 6);
  int zero = m.vertex_of_word.at(Word(""));
  CHECK(m.tree.degree(zero) == 3);
  for (const auto& p :
       {DyadicPoint::integer(-1, 0), DyadicPoint::integer(1, 0), DyadicPoint::integer(0, 1)}) {
    int v = oracles::vertex_at(m, p);
    REQUIRE(v >= 0);
    CHECK(m.tree.path_length(zero, v) == Rational(1));
  }
}

TEST_CASE("edge count of J_n is 2 * 3^n") {
  std::size_t p = 1;
  for (int n = 0; n <= 4; ++n) {
    auto m = build_jn(n);
    CHECK(m.tree.edge_count() == static_cast<int>(2 * p));
    p *= 3;
  }
}

TEST_CASE("word-level decomposition at -1/2 matches the three pieces") {
  auto tiles = csst_decompose({Word("1")});
  REQUIRE(tiles.size() == 3);
  std::set<std::vector<Word>> wordsets;
  for (const auto& t : tiles) wordsets.insert(t.words);
  CHECK(wordsets.count({Word("11")}));
  CHECK(wordsets.count({Word("13")}));
  CHECK(wordsets.count({Word("12"), Word("2"), Word("3")}));
  for (const auto& t : tiles) {
    REQUIRE(t.boundary.size() == 1);
    CHECK(t.boundary[0] == Word("1"));
  }
}

TEST_CASE("level bound check on word-addressed decompositions") {
  // cutting at 0 gives the three 1-tiles
  auto tiles = csst_decompose({Word("")});
  REQUIRE(tiles.size() == 3);
  auto rep = level_bound_check({Word("")}, tiles);
  CHECK(rep.pass);
  CHECK(rep.max_level == 1);

  // empty cut set: the root tile alone
  auto whole = csst_decompose({});
  auto rep0 = level_bound_check({}, whole);
  CHECK(rep0.pass);
  CHECK(rep0.max_level == 0);

  // cuts {0, -1/2}: five word tiles, max level 2 <= 2
  auto tiles2 = csst_decompose({Word(""), Word("1")});
  REQUIRE(tiles2.size() == 5);
  auto rep2 = level_bound_check({Word(""), Word("1")}, tiles2);
  CHECK(rep2.pass);
  CHECK(rep2.max_level == 2);

  // non-word-addressed input raises
  auto mixed = csst_decompose({Word("1")});
  CHECK_THROWS_AS(level_bound_check({Word("1")}, mixed), Error);
}

TEST_CASE("word-level decomposition matches the simplicial decompose oracle") {
  auto m = build_jn(4);
  auto segs = oracles::edge_segment_words(m);
  std::vector<std::vector<Word>> cut_sets = {
      {Word(""), Word("1")},
      {Word("1"), Word("32")},
      {Word(""), Word("1"), Word("2"), Word("3")},
  };
  for (const auto& cuts : cut_sets) {
    auto word_tiles = csst_decompose(cuts);
    std::vector<int> cut_vertices;
    for (const Word& w : cuts) cut_vertices.push_back(m.vertex_of_word.at(w));
    auto d = decompose(m.tree, cut_vertices);
    REQUIRE(word_tiles.size() == d.tiles.size());
    // each simplicial tile corresponds to exactly one word tile union
    std::vector<char> used(word_tiles.size(), 0);
    for (const auto& tile : d.tiles) {
      bool found = false;
      for (std::size_t i = 0; i < word_tiles.size() && !found; ++i) {
        if (used[i]) continue;
        if (oracles::tile_matches_words(m, segs, tile, word_tiles[i].words)) {
          used[i] = 1;
          found = true;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("tile incidence is exact") {
  CHECK(tiles_intersect(Word("1"), Word("2")));   // share 0
  CHECK(tiles_intersect(Word("1"), Word("13")));  // nested
  CHECK_FALSE(tiles_intersect(Word("11"), Word("22")));
  CHECK(tiles_intersect(Word("11"), Word("13")));  // siblings share -1/2 = g_1(0)
  CHECK(tiles_intersect(Word("12"), Word("13")));
  CHECK(tiles_intersect(Word("12"), Word("21")));  // share 0
}

TEST_CASE("same-level tiles meet in at most one point, a branch vertex") {
  for (std::size_t lev = 1; lev <= 4; ++lev) {
    auto ws = words_of_length(lev);
    for (std::size_t i = 0; i < ws.size(); ++i)
      for (std::size_t j = i + 1; j < ws.size(); ++j) {
        if (!tiles_intersect(ws[i], ws[j])) continue;
        std::size_t cp = Word::common_prefix_len(ws[i], ws[j]);
        DyadicPoint p = apply_word(ws[i].prefix(cp), DyadicPoint::integer(0, 0));
        CHECK(point_in_tile(ws[i], p));
        CHECK(point_in_tile(ws[j], p));
      }
  }
}

TEST_CASE("exact membership") {
  CHECK(point_in_csst(DyadicPoint::integer(-1, 0)));
  CHECK(point_in_csst(DyadicPoint::integer(0, 1)));
  CHECK(point_in_csst(DyadicPoint(Int(1), Int(0), 2)));   // 1/4 on the spine
  CHECK(point_in_csst(DyadicPoint(Int(1), Int(1), 1)));   // g_3(i) = 1/2 + i/2
  CHECK_FALSE(point_in_csst(DyadicPoint::integer(1, 1)));
  CHECK_FALSE(point_in_csst(DyadicPoint(Int(-1), Int(-1), 1)));
  CHECK(point_in_tile(Word("11"), DyadicPoint::integer(-1, 0)));
  CHECK_FALSE(point_in_tile(Word("12"), DyadicPoint::integer(-1, 0)));
}

TEST_CASE("unique 2-tile containing -1 with -1/2 on its boundary") {
  std::vector<Word> hits;
  for (const Word& w : words_up_to_length(4)) {
    if (!point_in_tile(w, DyadicPoint::integer(-1, 0))) continue;
    auto info = tile_info(w);
    for (const auto& b : info.boundary)
      if (b == half(-1, 0)) hits.push_back(w);
  }
  REQUIRE(hits.size() == 1);
  CHECK(hits[0] == Word("11"));
}

TEST_CASE("tile diameters equal endpoint distances exactly") {
  for (const Word& w : words_up_to_length(6)) {
    DyadicPoint a = apply_word(w, DyadicPoint::integer(-1, 0));
    DyadicPoint b = apply_word(w, DyadicPoint::integer(1, 0));
    Rational d = tile_info(w).diam;
    CHECK(euclidean_dist_sq(a, b) == d * d);
  }
}

TEST_CASE("branch vertices stay away from the origin: |g_u(0)| >= 2^-l") {
  for (const auto& v : branch_vertices(7)) {
    if (v.word.empty()) continue;  // g of the empty word is 0 itself
    Rational bound = v.height;     // 2^{-l}
    CHECK(euclidean_dist_sq(v.point, DyadicPoint::integer(0, 0)) >= bound * bound);
  }
}

TEST_CASE("euclidean separation constant is 1, stable from level 4 to 5") {
  auto r4 = euclidean_separation(4);
  auto r5 = euclidean_separation(5);
  CHECK(r4.min_ratio_sq == Rational(1));
  CHECK(r5.min_ratio_sq == r4.min_ratio_sq);
}

TEST_CASE("quasi-convexity: ratios at least 1, adjacent family attains sqrt(2)") {
  auto m4 = quasi_convexity(4);
  CHECK(m4.all_ratios_at_least_one);
  CHECK(m4.adjacent_max_ratio_sq == Rational(2));
  auto m5 = quasi_convexity(5);
  CHECK(m5.adjacent_max_ratio_sq == Rational(2));
  // the all-pairs sweep max is only a growing lower-bound estimate
  CHECK(m5.sweep_max_ratio_sq >= m4.sweep_max_ratio_sq);
}

TEST_CASE("tile bounding boxes bracket tile distances") {
  Box b1 = tile_bbox(Word("11"));
  Box b2 = tile_bbox(Word("22"));
  Rational gap = box_gap_sq(b1, b2);
  auto br = tile_dist_bracket(Word("11"), Word("22"), 3);
  CHECK(br.lo_sq >= gap);
  CHECK(br.lo_sq <= br.hi_sq);
  CHECK(br.lo_sq > 0);
  // the sample upper bound is at most the distance of the two inner endpoints
  CHECK(br.hi_sq <= euclidean_dist_sq(half(-1, 0), half(1, 0)));
}
