#include "csst/subdivision.hpp"

#include "csst/errors.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace csst {

SubdivisionSequence build_levels(const SimplicialMetricTree& tree, const SubdivisionConfig& cfg) {
  if (cfg.delta <= 0 || cfg.delta >= 1) fail(Errc::InvalidInput, "delta must lie in (0,1)");
  if (cfg.n_max < 0) fail(Errc::InvalidInput, "n_max must be non-negative");

  SubdivisionSequence seq;
  seq.delta = cfg.delta;
  seq.n_max = cfg.n_max;
  MLen diam = tree.diameter();
  seq.height_unit = MLen::from_sq(diam.sq / 4);
  if (diam.value) seq.height_unit.value = *diam.value / 2;

  auto heights = all_vertex_heights(tree);
  std::vector<std::pair<Rational, int>> branch_heights;  // (height^2, vertex)
  for (int v = 0; v < tree.vertex_count(); ++v)
    if (heights[v]) branch_heights.push_back({heights[v]->sq, v});

  for (int n = 0; n <= cfg.n_max; ++n) {
    SubdivisionLevel level;
    if (n > 0) {
      // H(v) >= delta^n * unit, compared exactly on squares
      Rational threshold_sq =
          rational_pow(cfg.delta, static_cast<unsigned>(2 * n)) * seq.height_unit.sq;
      for (const auto& [hsq, v] : branch_heights)
        if (hsq >= threshold_sq) level.cut_vertices.push_back(v);
      std::sort(level.cut_vertices.begin(), level.cut_vertices.end());
      if (level.cut_vertices.empty()) seq.empty_levels.push_back(n);
    }
    level.decomp = decompose(tree, level.cut_vertices);
    seq.levels.push_back(std::move(level));
  }
  return seq;
}

namespace {

bool spread_within(const std::vector<LevelConstant>& cs, const Rational& window_sq,
                   std::string* witness) {
  Rational mn(-1), mx(-1);
  int mn_level = 0, mx_level = 0;
  for (const auto& c : cs) {
    if (c.level == 0) continue;  // the root tile only anchors the scale
    if (c.value_sq <= 0) {
      *witness = "degenerate diameter constant at level " + std::to_string(c.level);
      return false;
    }
    if (mn < 0 || c.value_sq < mn) {
      mn = c.value_sq;
      mn_level = c.level;
    }
    if (mx < 0 || c.value_sq > mx) {
      mx = c.value_sq;
      mx_level = c.level;
    }
  }
  if (mn <= 0) return true;
  if (mx / mn > window_sq) {
    *witness = "constant drifts between levels " + std::to_string(mn_level) + " and " +
               std::to_string(mx_level);
    return false;
  }
  return true;
}

}  // namespace

DecompositionProperties verify_decomposition_properties(const SimplicialMetricTree& tree,
                                                        const SubdivisionSequence& seq) {
  DecompositionProperties rep;
  for (const auto& level : seq.levels) rep.level_sizes.push_back(level.cut_vertices.size());
  rep.empty_levels = seq.empty_levels;

  std::vector<Decomposition> decomps;
  for (const auto& level : seq.levels) decomps.push_back(level.decomp);
  TreeCover cover(tree, decomps);

  // (ii) + (iii): the visual conditions at the recorded scale; diam and dist
  // are measured against delta^n * unit so that unit-diameter inputs and the
  // J-models are treated alike
  rep.diam_pass = true;
  rep.dist_pass = true;
  for (int n = 0; n <= seq.n_max; ++n) {
    Rational scale_sq =
        rational_pow(seq.delta, static_cast<unsigned>(2 * n)) * seq.height_unit.sq;
    LevelConstant lo{n, 0, Rational(-1), true, ""}, hi{n, 0, Rational(-1), true, ""};
    for (std::size_t t = 0; t < seq.levels[n].decomp.tiles.size(); ++t) {
      SqBracket d = cover.diam_sq(n, static_cast<int>(t));
      Rational r = d.lo / scale_sq;
      if (lo.value_sq < 0 || r < lo.value_sq) {
        lo.value_sq = r;
        lo.witness = cover.tile_name(n, static_cast<int>(t));
      }
      if (hi.value_sq < 0 || r > hi.value_sq) {
        hi.value_sq = r;
        hi.witness = cover.tile_name(n, static_cast<int>(t));
      }
    }
    lo.value = std::sqrt(to_double(std::max(lo.value_sq, Rational(0))));
    hi.value = std::sqrt(to_double(std::max(hi.value_sq, Rational(0))));
    rep.diam_lower.push_back(lo);
    rep.diam_upper.push_back(hi);

    LevelConstant dc{n, 0, Rational(-1), true, ""};
    int count = cover.tile_count(n);
    for (int i = 0; i < count; ++i)
      for (int j = i + 1; j < count; ++j) {
        if (cover.touches(n, i, n, j)) continue;
        SqBracket ds = cover.dist_sq(n, i, n, j);
        if (ds.lo == 0) {
          rep.dist_pass = false;
          rep.dist_witness = {n, "unseparated disjoint tiles " + cover.tile_name(n, i) + "|" +
                                     cover.tile_name(n, j)};
          continue;
        }
        Rational r = ds.lo / scale_sq;
        if (dc.value_sq < 0 || r < dc.value_sq) {
          dc.value_sq = r;
          dc.witness = cover.tile_name(n, i) + "|" + cover.tile_name(n, j);
        }
      }
    if (dc.value_sq >= 0) {
      dc.value = std::sqrt(to_double(dc.value_sq));
      rep.dist_lower.push_back(dc);
    }
  }
  std::string w;
  const Rational window_sq(16);  // factor 4 on values
  if (rep.diam_pass && !spread_within(rep.diam_lower, window_sq, &w)) {
    rep.diam_pass = false;
    rep.diam_witness = {0, "lower " + w};
  }
  if (rep.diam_pass && !spread_within(rep.diam_upper, window_sq, &w)) {
    rep.diam_pass = false;
    rep.diam_witness = {0, "upper " + w};
  }
  if (rep.dist_pass && !spread_within(rep.dist_lower, window_sq, &w)) {
    rep.dist_pass = false;
    rep.dist_witness = {0, w};
  }

  // per-tile properties (iv)..(vii) across consecutive levels
  rep.edge_like_pass = true;
  rep.interior_count_pass = true;
  rep.three_point_pass = true;
  for (int n = 0; n < seq.n_max; ++n) {
    const Decomposition& coarse = seq.levels[n].decomp;
    const Decomposition& fine = seq.levels[n + 1].decomp;
    std::vector<char> in_coarse(tree.vertex_count(), 0), in_fine(tree.vertex_count(), 0);
    for (int v : coarse.cuts) in_coarse[v] = 1;
    for (int v : fine.cuts) in_fine[v] = 1;

    for (const Tile& X : coarse.tiles) {
      std::string name = "level " + std::to_string(n) + " tile " + std::to_string(X.id);
      if (X.boundary.size() > 2 && !rep.edge_like_witness) {
        rep.edge_like_pass = false;
        rep.edge_like_witness = {n, name + " has " + std::to_string(X.boundary.size()) +
                                        " boundary points"};
      }
      // V_X = V^{n+1} on the interior of X
      std::set<int> boundary(X.boundary.begin(), X.boundary.end());
      std::vector<int> vx;
      for (int v : X.vertices)
        if (in_fine[v] && !boundary.count(v)) vx.push_back(v);
      rep.vertex_bound_N = std::max(rep.vertex_bound_N, vx.size());
      if (vx.size() < 2 && !rep.interior_count_witness) {
        rep.interior_count_pass = false;
        rep.interior_count_witness = {n, name + " has only " + std::to_string(vx.size()) +
                                             " interior next-level cut points"};
      }
      // the decomposition of X induced by V_X is edge-like: fine tiles inside
      // X have at most 2 relative boundary points
      for (const Tile& Y : fine.tiles) {
        if (coarse.tile_of_edge[Y.edges.front()] != X.id) continue;
        std::size_t rel = 0;
        for (int b : Y.boundary)
          if (!in_coarse[b]) ++rel;
        if (rel > 2 && !rep.edge_like_witness) {
          rep.edge_like_pass = false;
          rep.edge_like_witness = {n + 1, "fine tile " + std::to_string(Y.id) + " inside " +
                                              name + " has " + std::to_string(rel) +
                                              " relative boundary points"};
        }
      }
      // (vii) on edge-tiles: at least three cut points strictly inside (u, v)
      if (X.boundary.size() == 2) {
        int u = X.boundary[0], v = X.boundary[1];
        auto path = tree.path_vertices(u, v);
        std::size_t on_open_arc = 0;
        for (std::size_t i = 1; i + 1 < path.size(); ++i)
          if (in_fine[path[i]] && !boundary.count(path[i])) ++on_open_arc;
        if (on_open_arc < 3 && !rep.three_point_witness) {
          rep.three_point_pass = false;
          rep.three_point_witness = {n, name + " boundary {" + std::to_string(tree.user_id(u)) +
                                            "," + std::to_string(tree.user_id(v)) + "} carries " +
                                            std::to_string(on_open_arc) +
                                            " interior next-level cut points"};
        }
      }
    }
  }

  rep.pass = rep.diam_pass && rep.dist_pass && rep.edge_like_pass && rep.interior_count_pass &&
             rep.three_point_pass;
  return rep;
}

CalibrationResult calibrate_delta(const SimplicialMetricTree& tree, int n_max,
                                  const std::vector<Rational>& grid) {
  if (grid.empty()) fail(Errc::NoFeasibleDelta, "empty delta grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i] <= 0 || grid[i] >= 1) fail(Errc::InvalidInput, "grid deltas must lie in (0,1)");
    if (i > 0 && grid[i] > grid[i - 1])
      fail(Errc::InvalidInput, "delta grid must be sorted descending");
  }
  CalibrationResult out;
  for (const Rational& delta : grid) {
    SubdivisionSequence seq = build_levels(tree, {delta, n_max});
    DecompositionProperties rep = verify_decomposition_properties(tree, seq);
    CalibrationTrailEntry entry{delta, rep.pass, ""};
    if (!rep.pass) {
      if (!rep.diam_pass && rep.diam_witness)
        entry.first_failure = "diam: " + rep.diam_witness->what;
      else if (!rep.dist_pass && rep.dist_witness)
        entry.first_failure = "dist: " + rep.dist_witness->what;
      else if (!rep.edge_like_pass && rep.edge_like_witness)
        entry.first_failure = "edge-like: " + rep.edge_like_witness->what;
      else if (!rep.interior_count_pass && rep.interior_count_witness)
        entry.first_failure = "interior count: " + rep.interior_count_witness->what;
      else if (!rep.three_point_pass && rep.three_point_witness)
        entry.first_failure = "three points: " + rep.three_point_witness->what;
    }
    out.trail.push_back(entry);
    if (rep.pass) {
      out.delta = delta;
      out.sequence = std::move(seq);
      out.report = std::move(rep);
      return out;
    }
  }
  std::string tried;
  for (const auto& e : out.trail) tried += format_rational(e.delta) + " ";
  fail(Errc::NoFeasibleDelta, "no delta in the grid passes: tried " + tried);
}

}  // namespace csst
