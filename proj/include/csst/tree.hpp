#pragma once

#include "csst/errors.hpp"
#include "csst/rational.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace csst {

enum class MetricMode { Geodesic, EuclideanEmbedded };

/// Exact metric length. `sq` is always the exact square; `value` is present
/// when the length itself is rational (all geodesic quantities, Euclidean
/// lengths along a common line). Comparisons go through `sq`.
struct MLen {
  std::optional<Rational> value;
  Rational sq{0};

  static MLen from_value(Rational v) {
    MLen m;
    m.sq = v * v;
    m.value = std::move(v);
    return m;
  }
  static MLen from_sq(Rational s) {
    MLen m;
    m.sq = std::move(s);
    return m;
  }
  double approx() const;
  friend bool operator==(const MLen& a, const MLen& b) { return a.sq == b.sq; }
  friend bool operator<(const MLen& a, const MLen& b) { return a.sq < b.sq; }
  friend bool operator<=(const MLen& a, const MLen& b) { return a.sq <= b.sq; }
};

struct VertexData {
  int id{0};
  std::optional<std::pair<Rational, Rational>> pos;
  std::optional<std::string> label;
};

struct EdgeData {
  int u{0};
  int v{0};
  Rational len{1};
};

/// A point of the tree: either a vertex or an interior point of an edge at
/// parameter t in (0,1) measured from the edge's u-endpoint.
struct TreePoint {
  int vertex = -1;
  int edge = -1;
  Rational t{0};

  static TreePoint at_vertex(int v) {
    TreePoint p;
    p.vertex = v;
    return p;
  }
  static TreePoint interior(int edge, Rational t) {
    TreePoint p;
    p.edge = edge;
    p.t = std::move(t);
    return p;
  }
  bool is_vertex() const { return vertex >= 0; }
  friend bool operator==(const TreePoint& a, const TreePoint& b) {
    if (a.is_vertex() != b.is_vertex()) return false;
    if (a.is_vertex()) return a.vertex == b.vertex;
    return a.edge == b.edge && a.t == b.t;
  }
};

/// Finite simplicial tree with positive rational edge lengths. Vertices are
/// addressed by internal indices 0..n-1 (user ids from JSON are kept for
/// round-trips). Immutable after construction.
class SimplicialMetricTree {
 public:
  SimplicialMetricTree(std::vector<VertexData> vertices, std::vector<EdgeData> edges,
                       MetricMode mode, std::vector<int> mark_ids = {});

  int vertex_count() const { return static_cast<int>(user_ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  MetricMode mode() const { return mode_; }

  int user_id(int index) const { return user_ids_[index]; }
  int index_of_id(int id) const;
  const std::optional<std::pair<Rational, Rational>>& position(int v) const { return pos_[v]; }
  const std::optional<std::string>& label(int v) const { return labels_[v]; }
  const std::vector<int>& marks() const { return marks_; }

  struct Edge {
    int u, v;
    Rational len;
  };
  const Edge& edge(int e) const { return edges_[e]; }
  /// (edge index, neighbor vertex) pairs, sorted by neighbor.
  const std::vector<std::pair<int, int>>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }
  bool is_leaf(int v) const { return degree(v) == 1; }
  bool is_branch_point(int v) const { return degree(v) >= 3; }
  std::vector<int> branch_points() const;
  std::vector<int> leaves() const;

  /// Geodesic path length between vertices (O(log n) after lazy LCA build).
  Rational path_length(int u, int v) const;
  int lca(int u, int v) const;
  bool on_path(int x, int u, int v) const;
  /// Vertex sequence of the unique simple path u .. v (inclusive).
  std::vector<int> path_vertices(int u, int v) const;

  /// Metric distance squared between vertices under the tree's mode.
  Rational dist_sq(int u, int v) const;
  MLen dist(int u, int v) const;

  /// Exact plane position of a tree point (EuclideanEmbedded only).
  std::pair<Rational, Rational> point_position(const TreePoint& p) const;
  void check_point(const TreePoint& p) const;

  /// Total edge length and metric diameter of the whole tree.
  MLen diameter() const;

  /// Scale every edge length by an exact factor (returns a new tree;
  /// positions are dropped unless factor == 1, Euclidean mode degrades to
  /// geodesic when positions are dropped).
  SimplicialMetricTree scaled(const Rational& factor) const;

 private:
  void build_lca() const;

  std::vector<int> user_ids_;
  std::vector<std::optional<std::pair<Rational, Rational>>> pos_;
  std::vector<std::optional<std::string>> labels_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<int, int>>> adj_;
  MetricMode mode_;
  std::vector<int> marks_;

  // lazy LCA / root-distance tables
  mutable bool lca_built_ = false;
  mutable std::vector<int> parent_;
  mutable std::vector<int> parent_edge_;
  mutable std::vector<int> depth_;
  mutable std::vector<Rational> root_dist_;
  mutable std::vector<std::vector<int>> up_;
};

}  // namespace csst
