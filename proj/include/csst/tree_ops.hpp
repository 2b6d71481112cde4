#pragma once

#include "csst/tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace csst {

struct ArcResult {
  std::vector<TreePoint> stops;  // endpoints plus every vertex passed, in order
  Rational length{0};
  MLen diameter;
};

/// Unique simple path between two tree points.
ArcResult arc(const SimplicialMetricTree& tree, const TreePoint& x, const TreePoint& y);

Rational point_distance(const SimplicialMetricTree& tree, const TreePoint& x, const TreePoint& y);

struct HeightRecord {
  TreePoint point;
  std::vector<MLen> branch_diameters;  // sorted descending
  std::optional<MLen> height;          // absent when fewer than 3 branches
};

HeightRecord branches_and_height(const SimplicialMetricTree& tree, const TreePoint& p);

/// Heights of all vertices at once (absent entries for degree < 3).
std::vector<std::optional<MLen>> all_vertex_heights(const SimplicialMetricTree& tree);

struct Tile {
  int id{0};
  std::vector<int> edges;
  std::vector<int> vertices;
  std::vector<int> boundary;
};

struct Decomposition {
  std::vector<int> cuts;
  std::vector<Tile> tiles;
  std::vector<int> tile_of_edge;
  const Tile& tile(int id) const { return tiles[id]; }
};

/// Cut the tree at a set of non-leaf vertices; tiles are closures of the
/// components of the complement.
Decomposition decompose(const SimplicialMetricTree& tree, std::vector<int> cuts);

struct RefineEntry {
  int fine_tile{0};
  int coarse_tile{0};
  std::vector<int> relative_boundary;  // boundary of the fine tile minus the coarse cut set
};

struct RefineReport {
  Decomposition fine;
  std::vector<RefineEntry> entries;
};

RefineReport refine(const SimplicialMetricTree& tree, const Decomposition& coarse,
                    std::vector<int> finer_cuts);

struct CenterResult {
  TreePoint center;
  std::optional<MLen> height_lower_bound;  // min of the three heights for branch-point triples
};

CenterResult center(const SimplicialMetricTree& tree, const TreePoint& x, const TreePoint& y,
                    const TreePoint& z);

struct GeometricBudget {
  std::size_t pair_budget = 250000;
  std::size_t ball_centers = 48;
  int ball_radii = 5;
};

struct ConstantEstimate {
  Rational ratio_sq{0};  // exact square of the reported constant
  double value{0};
  bool exact_sweep{true};  // false when the pair sweep was subsampled
  std::string witness;
};

struct GeometricConstantsReport {
  ConstantEstimate bounded_turning;            // K
  std::optional<ConstantEstimate> separation;  // absent without >= 2 branch points
  std::optional<ConstantEstimate> density;     // absent without branch points
  std::size_t density_pairs_without_witness{0};
  int doubling_estimate{0};  // greedy-cover upper-bound estimate, never exact
};

GeometricConstantsReport geometric_constants(const SimplicialMetricTree& tree,
                                             const GeometricBudget& budget = {});

}  // namespace csst
