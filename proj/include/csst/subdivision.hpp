#pragma once

#include "csst/quasivisual.hpp"
#include "csst/tree.hpp"
#include "csst/tree_ops.hpp"

#include <optional>
#include <string>
#include <vector>

namespace csst {

struct SubdivisionConfig {
  Rational delta{1, 2};
  int n_max = 1;
};

struct SubdivisionLevel {
  std::vector<int> cut_vertices;  // V^n, sorted vertex indices
  Decomposition decomp;           // X^n
};

/// The delta-graded subdivision: V^n = branch points with height at least
/// delta^n in units of diam(T)/2 (so the J_n models, whose diameter is 2, are
/// graded by raw heights). The unit is recorded for round-trips; no edge is
/// rescaled.
struct SubdivisionSequence {
  Rational delta{1, 2};
  int n_max = 0;
  MLen height_unit;  // diam(T)/2 in the tree's own metric
  std::vector<SubdivisionLevel> levels;
  std::vector<int> empty_levels;  // n >= 1 with V^n empty, flagged
};

SubdivisionSequence build_levels(const SimplicialMetricTree& tree, const SubdivisionConfig& cfg);

struct PropertyWitness {
  int level = 0;
  std::string what;
};

struct DecompositionProperties {
  bool pass = false;  // all of (ii)..(vii), with (i) informational
  // (i) V^n finite (always true here); sizes and empty levels reported
  std::vector<std::size_t> level_sizes;
  std::vector<int> empty_levels;
  // (ii) diam(X) ~ delta^n, constants stable across levels (factor-4 window)
  bool diam_pass = false;
  std::vector<LevelConstant> diam_lower, diam_upper;
  std::optional<PropertyWitness> diam_witness;
  // (iii) dist(X,Y) >~ delta^n for disjoint same-level tiles
  bool dist_pass = false;
  std::vector<LevelConstant> dist_lower;
  std::optional<PropertyWitness> dist_witness;
  // (iv) #bd(X) <= 2 and the induced decomposition X_X is edge-like
  bool edge_like_pass = false;
  std::optional<PropertyWitness> edge_like_witness;
  // (v) #V_X <= N; N is measured and reported
  std::size_t vertex_bound_N = 0;
  // (vi) #V_X >= 2
  bool interior_count_pass = false;
  std::optional<PropertyWitness> interior_count_witness;
  // (vii) edge-tiles carry >= 3 next-level cut points strictly between their
  // boundary points
  bool three_point_pass = false;
  std::optional<PropertyWitness> three_point_witness;
};

DecompositionProperties verify_decomposition_properties(const SimplicialMetricTree& tree,
                                                        const SubdivisionSequence& seq);

struct CalibrationTrailEntry {
  Rational delta{0};
  bool pass = false;
  std::string first_failure;
};

struct CalibrationResult {
  Rational delta{0};
  SubdivisionSequence sequence;
  DecompositionProperties report;
  std::vector<CalibrationTrailEntry> trail;
};

/// First delta in the (descending) grid whose subdivision passes all
/// properties through n_max; throws NoFeasibleDelta when the grid runs out.
CalibrationResult calibrate_delta(const SimplicialMetricTree& tree, int n_max,
                                  const std::vector<Rational>& grid);

}  // namespace csst
