#include "csst/tree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>

namespace csst {

double MLen::approx() const {
  if (value) return to_double(*value);
  return std::sqrt(to_double(sq));
}

SimplicialMetricTree::SimplicialMetricTree(std::vector<VertexData> vertices,
                                           std::vector<EdgeData> edges, MetricMode mode,
                                           std::vector<int> mark_ids)
    : mode_(mode) {
  if (vertices.size() < 2) fail(Errc::InvalidInput, "a tree needs at least two vertices");
  std::sort(vertices.begin(), vertices.end(),
            [](const VertexData& a, const VertexData& b) { return a.id < b.id; });
  std::map<int, int> index;
  user_ids_.reserve(vertices.size());
  for (const auto& v : vertices) {
    if (index.count(v.id)) fail(Errc::InvalidInput, "duplicate vertex id " + std::to_string(v.id));
    index[v.id] = static_cast<int>(user_ids_.size());
    user_ids_.push_back(v.id);
    pos_.push_back(v.pos);
    labels_.push_back(v.label);
  }
  if (edges.size() + 1 != vertices.size())
    fail(Errc::InvalidInput, "edge count must be vertex count - 1");
  adj_.assign(user_ids_.size(), {});
  edges_.reserve(edges.size());
  for (const auto& e : edges) {
    auto iu = index.find(e.u), iv = index.find(e.v);
    if (iu == index.end() || iv == index.end())
      fail(Errc::InvalidInput, "edge references unknown vertex id");
    if (e.len <= 0) fail(Errc::InvalidInput, "edge lengths must be positive");
    int ei = static_cast<int>(edges_.size());
    edges_.push_back({iu->second, iv->second, e.len});
    adj_[iu->second].push_back({ei, iv->second});
    adj_[iv->second].push_back({ei, iu->second});
  }
  for (auto& a : adj_)
    std::sort(a.begin(), a.end(),
              [](const auto& x, const auto& y) { return x.second < y.second; });

  // connectivity (acyclicity follows from the edge count)
  std::vector<char> seen(user_ids_.size(), 0);
  std::queue<int> bfs;
  bfs.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!bfs.empty()) {
    int u = bfs.front();
    bfs.pop();
    for (auto [e, w] : adj_[u]) {
      (void)e;
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        bfs.push(w);
      }
    }
  }
  if (reached != user_ids_.size()) fail(Errc::InvalidInput, "edge graph is not connected");

  if (mode_ == MetricMode::EuclideanEmbedded) {
    for (std::size_t v = 0; v < pos_.size(); ++v)
      if (!pos_[v])
        fail(Errc::InvalidInput, "euclidean-embedded mode requires a position on every vertex");
    for (const auto& e : edges_) {
      Rational dx = pos_[e.u]->first - pos_[e.v]->first;
      Rational dy = pos_[e.u]->second - pos_[e.v]->second;
      if (dx * dx + dy * dy != e.len * e.len)
        fail(Errc::InvalidInput, "edge length differs from straight-line distance");
    }
  }

  marks_.reserve(mark_ids.size());
  for (int id : mark_ids) {
    auto it = index.find(id);
    if (it == index.end()) fail(Errc::InvalidInput, "mark references unknown vertex id");
    marks_.push_back(it->second);
  }
  std::sort(marks_.begin(), marks_.end());
}

int SimplicialMetricTree::index_of_id(int id) const {
  auto it = std::lower_bound(user_ids_.begin(), user_ids_.end(), id);
  if (it == user_ids_.end() || *it != id)
    fail(Errc::InvalidPoint, "unknown vertex id " + std::to_string(id));
  return static_cast<int>(it - user_ids_.begin());
}

std::vector<int> SimplicialMetricTree::branch_points() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (is_branch_point(v)) out.push_back(v);
  return out;
}

std::vector<int> SimplicialMetricTree::leaves() const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count(); ++v)
    if (is_leaf(v)) out.push_back(v);
  return out;
}

void SimplicialMetricTree::build_lca() const {
  if (lca_built_) return;
  int n = vertex_count();
  parent_.assign(n, -1);
  parent_edge_.assign(n, -1);
  depth_.assign(n, 0);
  root_dist_.assign(n, Rational(0));
  std::vector<int> order;
  order.reserve(n);
  order.push_back(0);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int u = order[i];
    for (auto [e, w] : adj_[u]) {
      if (seen[w]) continue;
      seen[w] = 1;
      parent_[w] = u;
      parent_edge_[w] = e;
      depth_[w] = depth_[u] + 1;
      root_dist_[w] = root_dist_[u] + edges_[e].len;
      order.push_back(w);
    }
  }
  int logn = 1;
  while ((1 << logn) < n) ++logn;
  up_.assign(logn + 1, std::vector<int>(n, -1));
  up_[0] = parent_;
  for (int j = 1; j <= logn; ++j)
    for (int v = 0; v < n; ++v) up_[j][v] = up_[j - 1][v] < 0 ? -1 : up_[j - 1][up_[j - 1][v]];
  lca_built_ = true;
}

int SimplicialMetricTree::lca(int u, int v) const {
  build_lca();
  if (depth_[u] < depth_[v]) std::swap(u, v);
  int diff = depth_[u] - depth_[v];
  for (std::size_t j = 0; j < up_.size(); ++j)
    if (diff & (1 << j)) u = up_[j][u];
  if (u == v) return u;
  for (std::size_t j = up_.size(); j-- > 0;)
    if (up_[j][u] != up_[j][v]) {
      u = up_[j][u];
      v = up_[j][v];
    }
  return parent_[u];
}

std::vector<int> SimplicialMetricTree::path_vertices(int u, int v) const {
  build_lca();
  int a = lca(u, v);
  std::vector<int> left, right;
  for (int x = u; x != a; x = parent_[x]) left.push_back(x);
  left.push_back(a);
  for (int x = v; x != a; x = parent_[x]) right.push_back(x);
  left.insert(left.end(), right.rbegin(), right.rend());
  return left;
}

Rational SimplicialMetricTree::path_length(int u, int v) const {
  build_lca();
  int a = lca(u, v);
  return root_dist_[u] + root_dist_[v] - 2 * root_dist_[a];
}

bool SimplicialMetricTree::on_path(int x, int u, int v) const {
  build_lca();
  int a = lca(u, v);
  auto is_anc = [&](int anc, int node) {
    // anc on root-path of node?
    if (depth_[anc] > depth_[node]) return false;
    int d = depth_[node] - depth_[anc];
    int cur = node;
    for (std::size_t j = 0; j < up_.size(); ++j)
      if (d & (1 << j)) cur = up_[j][cur];
    return cur == anc;
  };
  return (is_anc(a, x)) && (is_anc(x, u) || is_anc(x, v));
}

Rational SimplicialMetricTree::dist_sq(int u, int v) const {
  if (mode_ == MetricMode::Geodesic) {
    Rational l = path_length(u, v);
    return l * l;
  }
  Rational dx = pos_[u]->first - pos_[v]->first;
  Rational dy = pos_[u]->second - pos_[v]->second;
  return dx * dx + dy * dy;
}

MLen SimplicialMetricTree::dist(int u, int v) const {
  if (mode_ == MetricMode::Geodesic) return MLen::from_value(path_length(u, v));
  return MLen::from_sq(dist_sq(u, v));
}

std::pair<Rational, Rational> SimplicialMetricTree::point_position(const TreePoint& p) const {
  check_point(p);
  if (p.is_vertex()) {
    if (!pos_[p.vertex]) fail(Errc::InvalidInput, "vertex has no plane position");
    return *pos_[p.vertex];
  }
  const Edge& e = edges_[p.edge];
  if (!pos_[e.u] || !pos_[e.v]) fail(Errc::InvalidInput, "edge endpoint has no plane position");
  Rational x = pos_[e.u]->first + p.t * (pos_[e.v]->first - pos_[e.u]->first);
  Rational y = pos_[e.u]->second + p.t * (pos_[e.v]->second - pos_[e.u]->second);
  return {x, y};
}

void SimplicialMetricTree::check_point(const TreePoint& p) const {
  if (p.is_vertex()) {
    if (p.vertex >= vertex_count()) fail(Errc::InvalidPoint, "vertex index out of range");
    return;
  }
  if (p.edge < 0 || p.edge >= edge_count()) fail(Errc::InvalidPoint, "edge index out of range");
  if (p.t <= 0 || p.t >= 1) fail(Errc::InvalidPoint, "interior parameter must be in (0,1)");
}

MLen SimplicialMetricTree::diameter() const {
  if (mode_ == MetricMode::Geodesic) {
    // double sweep
    auto farthest = [&](int src) {
      build_lca();
      std::vector<Rational> d(vertex_count(), Rational(0));
      std::vector<char> seen(vertex_count(), 0);
      std::vector<int> stack{src};
      seen[src] = 1;
      int best = src;
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        if (d[u] > d[best]) best = u;
        for (auto [e, w] : adj_[u])
          if (!seen[w]) {
            seen[w] = 1;
            d[w] = d[u] + edges_[e].len;
            stack.push_back(w);
          }
      }
      return std::make_pair(best, d[best]);
    };
    auto [u, du] = farthest(0);
    (void)du;
    auto [v, dv] = farthest(u);
    (void)v;
    return MLen::from_value(dv);
  }
  Rational best(0);
  for (int u = 0; u < vertex_count(); ++u)
    for (int v = u + 1; v < vertex_count(); ++v) best = std::max(best, dist_sq(u, v));
  return MLen::from_sq(best);
}

SimplicialMetricTree SimplicialMetricTree::scaled(const Rational& factor) const {
  if (factor <= 0) fail(Errc::InvalidInput, "scale factor must be positive");
  std::vector<VertexData> vs;
  vs.reserve(user_ids_.size());
  for (int v = 0; v < vertex_count(); ++v) {
    VertexData d;
    d.id = user_ids_[v];
    d.label = labels_[v];
    if (factor == 1) d.pos = pos_[v];
    vs.push_back(std::move(d));
  }
  std::vector<EdgeData> es;
  es.reserve(edges_.size());
  for (const auto& e : edges_) es.push_back({user_ids_[e.u], user_ids_[e.v], e.len * factor});
  MetricMode m = (factor == 1) ? mode_ : MetricMode::Geodesic;
  std::vector<int> mark_ids;
  for (int mv : marks_) mark_ids.push_back(user_ids_[mv]);
  return SimplicialMetricTree(std::move(vs), std::move(es), m, std::move(mark_ids));
}

}  // namespace csst
