#pragma once

#include "csst/dyadic.hpp"
#include "csst/rational.hpp"
#include "csst/tree.hpp"
#include "csst/word.hpp"

#include <map>
#include <optional>
#include <vector>

namespace csst {

/// Word-addressed tile T_w = g_w(T): diameter, exact boundary, center vertex.
struct TileInfo {
  Word word;
  Rational diam;                      // 2^{1-l(w)}
  std::vector<DyadicPoint> boundary;  // empty (root), one, or two points
  DyadicPoint center;                 // g_w(0)
  bool minus_is_boundary = false;     // g_w(-1) on the boundary
  bool plus_is_boundary = false;      // g_w(1) on the boundary
};

TileInfo tile_info(const Word& w);

struct BranchVertex {
  Word word;
  DyadicPoint point;  // g_w(0)
  Rational height;    // 2^{-l(w)}
};

struct WordBudget {
  std::size_t max_words = 200000;
};

/// All branch vertices g_u(0) with l(u) <= n-1, heights attached.
std::vector<BranchVertex> branch_vertices(int n, const WordBudget& budget = {});

/// A point g_w(base) with base in {-1, 0, +1}; the leaf i is (3, +1).
struct Anchor {
  Word word;
  int base = 0;

  DyadicPoint point() const;
  static Anchor vertex(Word w) { return {std::move(w), 0}; }
  static Anchor minus_one() { return {Word(), -1}; }
  static Anchor plus_one() { return {Word(), +1}; }
  static Anchor leaf_i() { return {Word("3"), +1}; }
};

/// Geodesic (path-metric) distance between branch vertices, by the
/// self-similar reduction; exact dyadic rational.
Rational geodesic_distance(const Word& v, const Word& w);
Rational geodesic_distance(const Anchor& x, const Anchor& y);

/// Exact point membership z in T_w (decidable for dyadic points).
bool point_in_csst(const DyadicPoint& z);
bool point_in_tile(const Word& w, const DyadicPoint& z);

/// 0 in T_w, i.e. w is empty or of the form 12..2, 21..1, 31..1.
bool tile_contains_zero(const Word& w);

/// Exact tile incidence: T_a meets T_b.
bool tiles_intersect(const Word& a, const Word& b);

struct Box {
  Rational xlo, xhi, ylo, yhi;
};
/// Exact axis-aligned bounding box of T_w (the IFS maps boxes to boxes).
Box tile_bbox(const Word& w);
Rational box_gap_sq(const Box& a, const Box& b);  // lower bound for dist(T_a, T_b)^2

/// Certified bracket for the Euclidean distance between two disjoint tiles,
/// from branch-vertex samples of bounded relative depth.
struct DistBracket {
  Rational lo_sq, hi_sq;
  bool exact = false;
};
DistBracket tile_dist_bracket(const Word& a, const Word& b, int sample_depth = 3);

/// Decomposition of the CSST induced by cutting at branch vertices
/// {g_u(0) : u in cuts}. Each tile is a finite union of word tiles.
struct CsstTile {
  std::vector<Word> words;     // maximal word tiles, sorted; union is the tile
  std::vector<Word> boundary;  // cut vertices lying on the tile
};
std::vector<CsstTile> csst_decompose(std::vector<Word> cuts);

/// True iff the union of the listed word tiles is exactly T_base.
bool words_cover_tile(const std::vector<Word>& words, const Word& base);

struct LevelBoundReport {
  bool pass = false;
  std::size_t cut_count = 0;
  std::size_t max_level = 0;
  std::optional<Word> witness;
  std::string detail;
};
/// Checks l(X) <= #cuts (and l(X) >= 1 when cuts is nonempty) for a
/// word-addressed decomposition; NotWordAddressed if some tile is not a T_w.
LevelBoundReport level_bound_check(const std::vector<Word>& cuts,
                                   const std::vector<CsstTile>& tiles);

/// Geodesic simplicial model J_n: 3^n segments of length 2^{1-n}, each split
/// at its midpoint; vertices carry exact plane positions.
struct JnModel {
  int level = 0;
  SimplicialMetricTree tree;
  std::map<Word, int> vertex_of_word;  // branch vertices g_u(0), l(u) <= n-1
  std::vector<std::optional<Word>> word_of_vertex;
};

JnModel build_jn(int n, const WordBudget& budget = {},
                 MetricMode mode = MetricMode::Geodesic);

/// Separation sweep: min over distinct branch-vertex pairs within the level
/// bound of |g_v(0)-g_w(0)|^2 / min(2^-l(v), 2^-l(w))^2.
struct SeparationReport {
  int level_bound = 0;
  Rational min_ratio_sq{0};
  Word witness_a, witness_b;
};
SeparationReport euclidean_separation(int level_bound, int jobs = 1);

/// Quasi-convexity measurements rho(p,q)/|p-q| over branch vertices.
/// The attained constant is measured on the scale-invariant family of
/// word-adjacent pairs (parent-child and siblings); the all-pairs sweep max
/// is a lower-bound estimate that grows with the level bound.
struct CsstMetrics {
  int level_bound = 0;
  bool all_ratios_at_least_one = false;
  Rational adjacent_max_ratio_sq{0};  // attained, stable across level bounds
  Word adjacent_witness_a, adjacent_witness_b;
  Rational sweep_max_ratio_sq{0};  // estimate only
  Word sweep_witness_a, sweep_witness_b;
};
CsstMetrics quasi_convexity(int level_bound, int jobs = 1);

}  // namespace csst
