// Acceptance suite: one check per criterion, each printing a pass/fail line.
// Run all, or a single criterion with --only N.

#include "csst/generators.hpp"
#include "csst/homeo.hpp"
#include "csst/json_io.hpp"
#include "csst/quasivisual.hpp"
#include "csst/subdivision.hpp"
#include "csst/util.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <queue>
#include <set>
#include <sstream>

using namespace csst;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

// --------------------------------------------------------------------------
// 1. Tile diameters: |g_w(-1) - g_w(1)| = 2^{1-l(w)} exactly for l(w) <= 8.
Outcome criterion1() {
  std::size_t count = 0;
  for (std::size_t l = 0; l <= 8; ++l) {
    for (const Word& w : words_of_length(l)) {
      DyadicPoint a = apply_word(w, DyadicPoint::integer(-1, 0));
      DyadicPoint b = apply_word(w, DyadicPoint::integer(1, 0));
      Rational d = pow2(1 - static_cast<long>(l));
      if (euclidean_dist_sq(a, b) != d * d)
        return {false, "diameter mismatch at word " + w.str()};
      ++count;
    }
  }
  return {true, std::to_string(count) + " words, exact"};
}

// --------------------------------------------------------------------------
// 2. Boundary lemma: tile_info boundaries match the same-level incidence
// brute force for l(w) <= 5; words ending in 3 have one boundary point.
Outcome criterion2() {
  // independent oracle: a point of T_w is a boundary point iff it lies in
  // another tile of the same level; candidates are all branch vertices
  std::size_t checked = 0;
  for (std::size_t l = 0; l <= 5; ++l) {
    auto words = words_of_length(l);
    std::vector<std::vector<DyadicPoint>> brute(words.size());
    if (l >= 1) {
      for (const auto& bv : branch_vertices(static_cast<int>(l))) {
        std::vector<std::size_t> hosts;
        for (std::size_t i = 0; i < words.size(); ++i)
          if (point_in_tile(words[i], bv.point)) hosts.push_back(i);
        if (hosts.size() >= 2)
          for (std::size_t i : hosts) brute[i].push_back(bv.point);
      }
    }
    for (std::size_t i = 0; i < words.size(); ++i) {
      std::sort(brute[i].begin(), brute[i].end());
      TileInfo info = tile_info(words[i]);
      if (info.boundary != brute[i])
        return {false, "boundary mismatch at word " + words[i].str()};
      if (l >= 1 && words[i].last() == 3 && info.boundary.size() != 1)
        return {false, "word " + words[i].str() + " should have one boundary point"};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " tiles, exact"};
}

// --------------------------------------------------------------------------
// 3. Branch heights on J_{l+4}: measured min branch diameter of g_w(0)
// equals 2^{-l} within 2^{2-m}, for all l(w) <= 4.
Outcome criterion3() {
  std::size_t checked = 0;
  for (int l = 0; l <= 4; ++l) {
    int m = l + 4;
    JnModel model = build_jn(m);
    auto heights = all_vertex_heights(model.tree);
    Rational expect = pow2(-l);
    Rational tol = pow2(2 - m);
    for (const Word& w : words_of_length(static_cast<std::size_t>(l))) {
      int v = model.vertex_of_word.at(w);
      if (!heights[v]) return {false, "no height at " + w.str()};
      Rational h = *heights[v]->value;
      Rational diff = h > expect ? h - expect : expect - h;
      if (diff > tol)
        return {false, "height off at " + w.str() + ": " + format_rational(h)};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " branch points across J_4..J_8"};
}

// --------------------------------------------------------------------------
// 4. Separation: min over distinct branch-vertex pairs of level <= 5 of
// |g_v(0)-g_w(0)| / min(2^-l(v), 2^-l(w)), positive and identical at level
// bounds 4 and 5.
Outcome criterion4() {
  SeparationReport r4 = euclidean_separation(4);
  SeparationReport r5 = euclidean_separation(5);
  if (r4.min_ratio_sq <= 0) return {false, "constant not positive"};
  if (r4.min_ratio_sq != r5.min_ratio_sq)
    return {false, "constant moved: " + format_rational(r4.min_ratio_sq) + " vs " +
                       format_rational(r5.min_ratio_sq)};
  return {true, "c^2 = " + format_rational(r4.min_ratio_sq) + " at both bounds, witness " +
                    r5.witness_a.str() + "|" + r5.witness_b.str()};
}

// --------------------------------------------------------------------------
// 5. Quasi-convexity: all ratios >= 1; the attained constant (adjacent
// family) is stable from level bound 5 to 6; geodesic distances agree with
// an integer BFS oracle on J_7 for all pairs of level <= 6.
Outcome criterion5() {
  CsstMetrics m5 = quasi_convexity(5, 4);
  CsstMetrics m6 = quasi_convexity(6, 4);
  if (!m5.all_ratios_at_least_one || !m6.all_ratios_at_least_one)
    return {false, "a ratio below 1 appeared"};
  if (m5.adjacent_max_ratio_sq != m6.adjacent_max_ratio_sq)
    return {false, "attained constant moved between level bounds"};

  // oracle: BFS in units of 2^-7 over the J_7 edge graph
  JnModel model = build_jn(7);
  int n = model.tree.vertex_count();
  std::vector<std::vector<int>> adj(n);
  for (int e = 0; e < model.tree.edge_count(); ++e) {
    adj[model.tree.edge(e).u].push_back(model.tree.edge(e).v);
    adj[model.tree.edge(e).v].push_back(model.tree.edge(e).u);
  }
  auto vs = branch_vertices(7);  // level <= 6
  Rational unit = pow2(-7);
  for (const auto& src : vs) {
    int s = model.vertex_of_word.at(src.word);
    std::vector<int> steps(n, -1);
    steps[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : adj[u])
        if (steps[w] < 0) {
          steps[w] = steps[u] + 1;
          q.push(w);
        }
    }
    for (const auto& dst : vs) {
      if (dst.word < src.word) continue;
      Rational expect = unit * steps[model.vertex_of_word.at(dst.word)];
      if (geodesic_distance(src.word, dst.word) != expect)
        return {false, "geodesic mismatch at " + src.word.str() + "|" + dst.word.str()};
    }
  }
  return {true, "L^2 = " + format_rational(m6.adjacent_max_ratio_sq) +
                    " attained and stable; sweep max (estimate) " +
                    format_rational(m6.sweep_max_ratio_sq) + "; oracle exact on " +
                    std::to_string(vs.size()) + " vertices"};
}

// --------------------------------------------------------------------------
// 6. Decomposition-properties verifier on J_10.
Outcome criterion6() {
  JnModel model = build_jn(10, {400000});
  CalibrationResult cal = calibrate_delta(
      model.tree, 3, {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16)});
  if (!cal.report.pass) return {false, "calibrated delta does not pass"};

  SubdivisionSequence half = build_levels(model.tree, {Rational(1, 2), 3});
  DecompositionProperties rep = verify_decomposition_properties(model.tree, half);
  if (rep.three_point_pass) return {false, "delta=1/2 unexpectedly satisfies the 3-point rule"};
  if (!rep.three_point_witness) return {false, "delta=1/2 failure lacks a witness"};
  return {true, "calibrated delta = " + format_rational(cal.delta) +
                    "; delta=1/2 witness: " + rep.three_point_witness->what};
}

// --------------------------------------------------------------------------
// 7. Tile-homeomorphism lemma on 100 seeded random trivalent marked trees.
struct MarkedCase {
  SimplicialMetricTree tree;
  std::vector<int> cuts;
  std::optional<int> mark_minus, mark_plus;
};

MarkedCase make_case(std::uint64_t seed) {
  Rng rng(seed * 77 + 13);
  int branch_points = 3 + static_cast<int>(rng.below(38));  // <= 40
  MarkedCase out{make_random_trivalent({branch_points, seed}), {}, {}, {}};
  const auto& t = out.tree;

  std::vector<int> bps = t.branch_points();
  std::vector<int> picked;
  for (int v : bps)
    if (rng.below(2)) picked.push_back(v);
  if (picked.empty() && !bps.empty()) picked.push_back(bps[rng.below(bps.size())]);

  // close under centers: add every Steiner-tree vertex of degree >= 3
  if (picked.size() >= 2) {
    std::set<int> steiner_edges;
    for (std::size_t i = 1; i < picked.size(); ++i) {
      auto path = t.path_vertices(picked[0], picked[i]);
      for (std::size_t k = 0; k + 1 < path.size(); ++k)
        for (auto [e, w] : t.neighbors(path[k]))
          if (w == path[k + 1]) steiner_edges.insert(e);
    }
    std::map<int, int> deg;
    for (int e : steiner_edges) {
      deg[t.edge(e).u]++;
      deg[t.edge(e).v]++;
    }
    std::set<int> cuts(picked.begin(), picked.end());
    for (const auto& [v, d] : deg)
      if (d >= 3) cuts.insert(v);
    out.cuts.assign(cuts.begin(), cuts.end());
  } else {
    out.cuts = picked;
  }

  // marks: leaves of distinct leaf-tiles
  int want_marks = static_cast<int>(rng.below(3));
  if (want_marks > 0) {
    Decomposition d = decompose(t, out.cuts);
    std::vector<int> mark_leaves;
    std::set<int> used_tiles;
    for (int leaf : t.leaves()) {
      if (static_cast<int>(mark_leaves.size()) == want_marks) break;
      int tile = d.tile_of_edge[t.neighbors(leaf).front().first];
      if (!out.cuts.empty() && d.tiles[tile].boundary.size() != 1) continue;
      if (used_tiles.count(tile)) continue;
      used_tiles.insert(tile);
      mark_leaves.push_back(leaf);
    }
    if (!mark_leaves.empty()) out.mark_minus = mark_leaves[0];
    if (mark_leaves.size() >= 2) out.mark_plus = mark_leaves[1];
  }
  return out;
}

Outcome criterion7() {
  int two_level_checks = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    MarkedCase c = make_case(seed);
    const auto& t = c.tree;
    Decomposition d = decompose(t, c.cuts);
    MarkedTree marked{&t, c.cuts, c.mark_minus, c.mark_plus};
    TileHomeoResult h;
    try {
      h = build_tile_homeo(marked, d);
    } catch (const Error& e) {
      return {false, "seed " + std::to_string(seed) + ": " + e.what()};
    }
    auto where = [&](const std::string& what) {
      return "seed " + std::to_string(seed) + ": " + what;
    };

    // (iv): 1 <= l(F(X)) <= #V when V is nonempty; l = 0 for the lone tile
    for (const Word& w : h.tile_words) {
      if (c.cuts.empty()) {
        if (!w.empty()) return {false, where("expected the root word")};
      } else if (w.length() < 1 || w.length() > c.cuts.size()) {
        return {false, where("level bound violated at word " + w.str())};
      }
    }

    // (i): normalization of the marked leaves
    auto tile_of_leaf = [&](int leaf) {
      return d.tile_of_edge[t.neighbors(leaf).front().first];
    };
    if (c.mark_minus) {
      const Word& w = h.tile_words[tile_of_leaf(*c.mark_minus)];
      for (std::size_t i = 0; i < w.length(); ++i)
        if (w.letter(i) != 1) return {false, where("mark -1 drifted to " + w.str())};
    }
    if (c.mark_plus) {
      const Word& w = h.tile_words[tile_of_leaf(*c.mark_plus)];
      for (std::size_t i = 0; i < w.length(); ++i)
        if (w.letter(i) != 2) return {false, where("mark +1 drifted to " + w.str())};
    }

    // (ii)/(iii): level-2 guarantees whenever the preconditions hold
    if (c.mark_minus && !c.mark_plus && c.cuts.size() >= 2) {
      if (h.tile_words[tile_of_leaf(*c.mark_minus)] != Word("11"))
        return {false, where("single-mark tile is not T_11")};
      ++two_level_checks;
    }
    if (c.mark_minus && c.mark_plus) {
      auto path = t.path_vertices(*c.mark_minus, *c.mark_plus);
      std::set<int> cutset(c.cuts.begin(), c.cuts.end());
      int on_arc = 0;
      for (std::size_t i = 1; i + 1 < path.size(); ++i)
        if (cutset.count(path[i])) ++on_arc;
      if (on_arc >= 3) {
        if (h.tile_words[tile_of_leaf(*c.mark_minus)] != Word("11") ||
            h.tile_words[tile_of_leaf(*c.mark_plus)] != Word("22"))
          return {false, where("two-mark tiles are not T_11/T_22")};
        ++two_level_checks;
      }
    }

    // incidence equivalence and the cut-replay oracle
    for (std::size_t i = 0; i < d.tiles.size(); ++i)
      for (std::size_t j = i + 1; j < d.tiles.size(); ++j) {
        std::vector<int> common;
        std::set_intersection(d.tiles[i].vertices.begin(), d.tiles[i].vertices.end(),
                              d.tiles[j].vertices.begin(), d.tiles[j].vertices.end(),
                              std::back_inserter(common));
        if (!common.empty() != tiles_intersect(h.tile_words[i], h.tile_words[j]))
          return {false, where("incidence mismatch")};
      }
    std::vector<Word> cut_words;
    for (const auto& [v, w] : h.vertex_words) cut_words.push_back(w);
    auto replay = csst_decompose(cut_words);
    std::vector<Word> replay_words;
    for (const auto& tile : replay) {
      if (tile.words.size() != 1) return {false, where("replay tile is not word-addressed")};
      replay_words.push_back(tile.words.front());
    }
    std::vector<Word> image = h.tile_words;
    std::sort(image.begin(), image.end());
    std::sort(replay_words.begin(), replay_words.end());
    if (image != replay_words) return {false, where("cut replay mismatch")};
  }
  return {true, "100 trees; level-2 guarantees exercised " + std::to_string(two_level_checks) +
                    " times"};
}

// --------------------------------------------------------------------------
// 8. End-to-end on J_8 with the default grid.
Outcome criterion8() {
  JnModel model = build_jn(8);
  EndToEndResult r = end_to_end(
      model.tree, {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16)}, 3, 4000, 0);
  if (!r.properties.pass) return {false, "subdivision properties failed"};
  if (!r.isomorphism.pass)
    return {false, "isomorphism failed: " +
                       (r.isomorphism.failures.empty() ? std::string("?")
                                                       : r.isomorphism.failures[0].what)};
  if (!r.image_qv.pass) return {false, "image cover failed the quasi-visual check"};
  if (r.isomorphism.max_level_increment < 1 ||
      r.isomorphism.max_level_increment > r.properties.vertex_bound_N)
    return {false, "level increments leave [1, N]"};
  std::ostringstream detail;
  detail << "delta = " << format_rational(r.delta) << ", N = " << r.properties.vertex_bound_N
         << ", image k0 = " << r.image_qv.k0 << ", eta: alpha = " << r.distortion.alpha
         << " K = " << r.distortion.coefficient;
  return {true, detail.str()};
}

// --------------------------------------------------------------------------
// 9. Distortion sanity.
Outcome criterion9() {
  JnModel model = build_jn(3);
  MetricPair ident;
  ident.n = static_cast<std::size_t>(model.tree.vertex_count());
  ident.d1_sq = [&](std::size_t i, std::size_t j) {
    return model.tree.dist_sq(static_cast<int>(i), static_cast<int>(j));
  };
  ident.d2_sq = ident.d1_sq;
  DistortionFit fid = fit_distortion(ident, 600, 2);
  if (fid.coefficient != 1.0 || fid.alpha != 1.0)
    return {false, "identity fit is not (K=1, alpha=1)"};

  MetricPair snow = ident;
  snow.d2_sq = [&](std::size_t i, std::size_t j) {
    return model.tree.path_length(static_cast<int>(i), static_cast<int>(j));
  };
  DistortionFit fsnow = fit_distortion(snow, 600, 2);
  if (fsnow.alpha != 0.5) return {false, "snowflake alpha is not 1/2"};
  if (fsnow.max_residual != 0.0) return {false, "snowflake residual is not 0"};
  return {true, "identity (1, 1) and snowflake (K=1, alpha=1/2, residual 0) exact"};
}

// --------------------------------------------------------------------------
// 10. CRT trend: separation constants shrink from resolution 2^6 to 2^10
// for at least 14 of 20 seeds.
Outcome criterion10() {
  int below = 0, usable = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto sep_at = [&](std::size_t resolution) -> std::optional<Rational> {
      CrtQuotient q = crt_quotient(brownian_excursion(resolution, seed));
      auto rep = geometric_constants(q.tree);
      if (!rep.separation) return std::nullopt;
      return rep.separation->ratio_sq;
    };
    auto coarse = sep_at(1 << 6);
    auto fine = sep_at(1 << 10);
    if (!coarse || !fine) continue;
    ++usable;
    if (*fine < *coarse) ++below;
  }
  std::ostringstream detail;
  detail << below << "/" << usable << " seeds shrink (threshold 14/20)";
  return {below >= 14 && usable == 20, detail.str()};
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--only" && i + 1 < argc) only = std::atoi(argv[++i]);
  }
  std::map<int, std::function<Outcome()>> criteria{
      {1, criterion1}, {2, criterion2}, {3, criterion3}, {4, criterion4}, {5, criterion5},
      {6, criterion6}, {7, criterion7}, {8, criterion8}, {9, criterion9}, {10, criterion10}};
  int failures = 0;
  for (const auto& [num, fn] : criteria) {
    if (only != 0 && num != only) continue;
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("criterion %2d: %s  [%.1fs]  %s\n", num, out.pass ? "PASS" : "FAIL", secs,
                out.detail.c_str());
    if (!out.pass) ++failures;
  }
  return failures;
}
