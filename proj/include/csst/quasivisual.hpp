#pragma once

#include "csst/csst.hpp"
#include "csst/rational.hpp"
#include "csst/tree.hpp"
#include "csst/tree_ops.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace csst {

/// Certified bracket on a squared metric quantity.
struct SqBracket {
  Rational lo{0};
  Rational hi{0};
  bool exact = true;
};

/// Level cover of a bounded metric space: per-level tile lists with exact (or
/// bracketed) diameters, set distances and an exact incidence predicate.
/// Level 0 must be the whole space.
class Cover {
 public:
  virtual ~Cover() = default;
  virtual int max_level() const = 0;
  virtual int tile_count(int level) const = 0;
  virtual SqBracket diam_sq(int level, int tile) const = 0;
  virtual SqBracket dist_sq(int l1, int t1, int l2, int t2) const = 0;
  virtual bool touches(int l1, int t1, int l2, int t2) const = 0;
  virtual std::string tile_name(int level, int tile) const = 0;

  /// Registered query points (for pairing_index).
  virtual int point_count() const { return 0; }
  virtual std::vector<int> tiles_containing(int level, int point) const;
  virtual SqBracket point_dist_sq(int a, int b) const;
};

/// Cover by word tiles of the CSST under the Euclidean metric.
class WordCover : public Cover {
 public:
  explicit WordCover(std::vector<std::vector<Word>> levels, int dist_sample_depth = 3);
  /// The canonical cover {T_w : l(w) = n}, n = 0..depth.
  static WordCover full_levels(int depth);

  int max_level() const override { return static_cast<int>(levels_.size()) - 1; }
  int tile_count(int level) const override { return static_cast<int>(levels_[level].size()); }
  SqBracket diam_sq(int level, int tile) const override;
  SqBracket dist_sq(int l1, int t1, int l2, int t2) const override;
  bool touches(int l1, int t1, int l2, int t2) const override;
  std::string tile_name(int level, int tile) const override;

  int add_point(const Anchor& a);
  int point_count() const override { return static_cast<int>(points_.size()); }
  std::vector<int> tiles_containing(int level, int point) const override;
  SqBracket point_dist_sq(int a, int b) const override;

  const std::vector<Word>& level_words(int level) const { return levels_[level]; }

 private:
  std::vector<std::vector<Word>> levels_;
  std::vector<std::vector<Box>> bbox_;
  std::vector<std::vector<Rational>> diam_sq_;
  std::vector<std::vector<DyadicPoint>> centers_;
  std::vector<Anchor> points_;
  std::vector<DyadicPoint> point_values_;
  int sample_depth_;
  mutable std::map<std::pair<std::string, std::string>, DistBracket> dist_cache_;
};

/// Cover from per-level decompositions of a simplicial metric tree.
class TreeCover : public Cover {
 public:
  TreeCover(const SimplicialMetricTree& tree, std::vector<Decomposition> levels);

  int max_level() const override { return static_cast<int>(levels_.size()) - 1; }
  int tile_count(int level) const override {
    return static_cast<int>(levels_[level].tiles.size());
  }
  SqBracket diam_sq(int level, int tile) const override;
  SqBracket dist_sq(int l1, int t1, int l2, int t2) const override;
  bool touches(int l1, int t1, int l2, int t2) const override;
  std::string tile_name(int level, int tile) const override;

  int add_point(const TreePoint& p);
  int point_count() const override { return static_cast<int>(points_.size()); }
  std::vector<int> tiles_containing(int level, int point) const override;
  SqBracket point_dist_sq(int a, int b) const override;

  const Decomposition& level_decomposition(int level) const { return levels_[level]; }

 private:
  MLen tile_diameter(int level, int tile) const;

  const SimplicialMetricTree& tree_;
  std::vector<Decomposition> levels_;
  std::vector<TreePoint> points_;
  std::vector<std::vector<MLen>> diam_cache_;
};

struct LevelConstant {
  int level = 0;
  double value = 0;  // worst constant at this level
  Rational value_sq{0};
  bool certified = true;  // false when brackets or subsampling intervened
  std::string witness;
};

struct QvConditionReport {
  bool pass = false;
  std::vector<LevelConstant> per_level;
  std::string note;
};

struct QvReport {
  int max_level = 0;
  bool pass = false;
  QvConditionReport same_level_diam;   // (i): max diam ratio over touching pairs
  QvConditionReport disjoint_dist;     // (ii): min dist/diam over disjoint pairs
  QvConditionReport cross_level_diam;  // (iii): max parent/child diam ratio
  // (iv)
  bool shrink_pass = false;
  int k0 = 0;
  double lambda = 0;
  // derived geometric-decay data
  double C = 0, rho = 0, tau = 0, alpha = 0;
  bool subsampled = false;
};

struct QvOptions {
  std::size_t pair_budget = 4000000;
  int jobs = 1;
};

QvReport check_quasivisual(const Cover& cover, int max_level, const QvOptions& opts = {});

struct VisualReport {
  bool pass = false;
  Rational delta{0};
  std::vector<LevelConstant> diam_lower, diam_upper;  // diam / delta^n per level
  std::vector<LevelConstant> dist_lower;              // dist / delta^n per level
  double stability_factor = 0;  // pinned pass window: factor 4 across levels
  std::string witness;
};

/// Visual-approximation check at parameter delta; on pass the quasi-visual
/// check must pass as well (asserted by the caller via check_quasivisual).
VisualReport check_visual(const Cover& cover, const Rational& delta, const QvOptions& opts = {});

struct PairingIndex {
  int m = 0;
  bool censored = false;  // still touching at the deepest built level
  double diam_at_m = 0;   // diam(X^m) for an m-tile containing x
  double ratio = 0;       // d(x,y) / diam(X^m)
};

/// Largest level at which tiles containing x and y still touch.
PairingIndex pairing_index(const Cover& cover, int point_x, int point_y);

/// Two exact metrics on a shared finite point set (squared values).
struct MetricPair {
  std::size_t n = 0;
  std::function<Rational(std::size_t, std::size_t)> d1_sq;
  std::function<Rational(std::size_t, std::size_t)> d2_sq;
};

struct DistortionFit {
  std::size_t triples = 0;
  double alpha = 1;
  std::string alpha_label;  // grid point, e.g. "1/2"
  double coefficient = 1;   // K >= 1
  double max_residual = 0;  // max positive excess of t' over K*max(t^a, t^{1/a})
};

/// Fits the power envelope t' <= K max(t^alpha, t^{1/alpha}) over sampled
/// triples; alpha on the grid {0.05, 0.10, ..., 1.00}, K minimized, then
/// alpha maximized. Deterministic under the seed.
DistortionFit fit_distortion(const MetricPair& metrics, std::size_t triple_budget,
                             std::uint64_t seed);

}  // namespace csst
