#include "csst/generators.hpp"

#include "csst/errors.hpp"
#include "csst/util.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace csst {

SimplicialMetricTree make_jn_model(int level, const WordBudget& budget) {
  return build_jn(level, budget).tree;
}

SimplicialMetricTree make_perturbed_model(const PerturbSpec& spec, const WordBudget& budget) {
  if (spec.factor_lo <= 0 || spec.factor_hi < spec.factor_lo)
    fail(Errc::InvalidInput, "perturbation factors must satisfy 0 < lo <= hi");
  JnModel base = build_jn(spec.level, budget);
  Rng rng(spec.seed);
  std::vector<VertexData> vs;
  for (int v = 0; v < base.tree.vertex_count(); ++v) {
    VertexData d;
    d.id = base.tree.user_id(v);
    d.label = base.tree.label(v);
    vs.push_back(d);
  }
  std::vector<EdgeData> es;
  Rational span = spec.factor_hi - spec.factor_lo;
  for (int e = 0; e < base.tree.edge_count(); ++e) {
    const auto& ed = base.tree.edge(e);
    Rational t(static_cast<long>(rng.below(1 << 16)), 1 << 16);
    Rational factor = spec.factor_lo + span * t;
    es.push_back({base.tree.user_id(ed.u), base.tree.user_id(ed.v), ed.len * factor});
  }
  return SimplicialMetricTree(std::move(vs), std::move(es), MetricMode::Geodesic);
}

SimplicialMetricTree make_random_trivalent(const RandomTrivalentSpec& spec) {
  if (spec.branch_points < 1) fail(Errc::InvalidInput, "need at least one branch point");
  Rng rng(spec.seed);
  struct E {
    int u, v;
    Rational len;
  };
  std::vector<E> edges{{0, 1, Rational(1)}};
  int next_vertex = 2;
  auto random_len = [&] { return Rational(1 + static_cast<long>(rng.below(64)), 64); };
  for (int i = 0; i < spec.branch_points; ++i) {
    std::size_t pick = rng.below(edges.size());
    E old = edges[pick];
    int mid = next_vertex++;
    int leaf = next_vertex++;
    edges[pick] = {old.u, mid, old.len / 2};
    edges.push_back({mid, old.v, old.len / 2});
    edges.push_back({mid, leaf, random_len()});
  }
  std::vector<VertexData> vs(next_vertex);
  for (int v = 0; v < next_vertex; ++v) vs[v].id = v;
  std::vector<EdgeData> es;
  for (const E& e : edges) es.push_back({e.u, e.v, e.len});
  return SimplicialMetricTree(std::move(vs), std::move(es), MetricMode::Geodesic);
}

ExcursionSample brownian_excursion(std::size_t resolution, std::uint64_t seed) {
  if (resolution < 2 || (resolution & (resolution - 1)) != 0)
    fail(Errc::InvalidInput, "resolution must be a power of two, at least 2");
  Rng rng(seed);
  std::size_t m = resolution;
  std::vector<int> steps(m, 1);
  for (std::size_t i = m / 2; i < m; ++i) steps[i] = -1;
  for (std::size_t i = m - 1; i > 0; --i) std::swap(steps[i], steps[rng.below(i + 1)]);

  std::vector<long> walk(m + 1, 0);
  for (std::size_t i = 0; i < m; ++i) walk[i + 1] = walk[i] + steps[i];
  std::size_t argmin = 0;
  for (std::size_t i = 1; i < m; ++i)
    if (walk[i] < walk[argmin]) argmin = i;

  ExcursionSample out;
  out.resolution = m;
  out.seed = seed;
  unsigned j = 0;
  while ((1ULL << j) < m) ++j;
  out.scale = pow2(-static_cast<long>((j + 1) / 2));
  out.units.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i)
    out.units[i] = walk[(argmin + i) % m] - walk[argmin];
  for (long v : out.units)
    if (v < 0) fail(Errc::NotAnExcursion, "internal: negative excursion value");
  if (out.units[0] != 0 || out.units[m] != 0)
    fail(Errc::NotAnExcursion, "internal: excursion endpoints must vanish");
  return out;
}

long excursion_dist_units(const ExcursionSample& e, std::size_t s, std::size_t t) {
  if (s > t) std::swap(s, t);
  if (t >= e.units.size()) fail(Errc::InvalidInput, "grid index out of range");
  long lo = e.units[s];
  for (std::size_t i = s; i <= t; ++i) lo = std::min(lo, e.units[i]);
  return e.units[s] + e.units[t] - 2 * lo;
}

CrtQuotient crt_quotient(const ExcursionSample& e, const Rational& epsilon) {
  const auto& u = e.units;
  std::size_t m = e.resolution;
  if (u.size() != m + 1 || u[0] != 0 || u[m] != 0)
    fail(Errc::NotAnExcursion, "endpoints must vanish");
  for (long x : u)
    if (x < 0) fail(Errc::NotAnExcursion, "negative value");
  if (epsilon < 0) fail(Errc::InvalidInput, "epsilon must be non-negative");
  bool all_zero = true;
  for (long x : u) all_zero = all_zero && x == 0;
  if (all_zero) fail(Errc::NotAnExcursion, "constant-zero excursion has a one-point quotient");

  // Harris walk: an up-step opens a child, a down-step returns to the parent.
  // Grid points at equal d_e-distance zero land on the same node.
  std::vector<int> parent{-1};
  std::vector<int> stack{0};
  std::vector<int> node_of_grid(m + 1);
  node_of_grid[0] = 0;
  for (std::size_t i = 1; i <= m; ++i) {
    long d = u[i] - u[i - 1];
    if (d == 1) {
      int node = static_cast<int>(parent.size());
      parent.push_back(stack.back());
      stack.push_back(node);
    } else if (d == -1) {
      stack.pop_back();
      if (stack.empty()) fail(Errc::NotAnExcursion, "walk dips below zero");
    } else {
      fail(Errc::NotAnExcursion, "steps must be +-1 in units");
    }
    node_of_grid[i] = stack.back();
  }

  int n = static_cast<int>(parent.size());
  std::vector<int> merge(n);
  std::iota(merge.begin(), merge.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (merge[x] != x) x = merge[x] = merge[merge[x]];
    return x;
  };

  std::vector<int> degree(n, 0);
  for (int v = 1; v < n; ++v) {
    int a = find(v), b = find(parent[v]);
    if (a != b) {
      ++degree[a];
      ++degree[b];
    }
  }
  std::vector<char> keep(n, 0);
  for (int v = 0; v < n; ++v)
    if (find(v) == v && degree[v] != 2) keep[v] = 1;
  keep[find(0)] = 1;

  // walk down from the root, contracting degree-2 chains into edges
  struct OutEdge {
    int u, v;
    long units;
  };
  std::vector<OutEdge> out_edges;
  std::vector<std::vector<int>> children(n);
  for (int v = 1; v < n; ++v) children[parent[v]].push_back(v);
  std::vector<int> order{0};
  order.reserve(n);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int c : children[order[i]]) order.push_back(c);

  std::vector<int> anchor_of(n, -1);   // nearest kept class at or above, per class
  std::vector<long> anchor_dist(n, 0);
  anchor_of[find(0)] = find(0);
  for (int v : order) {
    if (v == 0) continue;
    int cls = find(v), pcls = find(parent[v]);
    if (cls == pcls) continue;  // merged by epsilon
    int up_anchor = anchor_of[pcls];
    long up_dist = anchor_dist[pcls] + 1;
    if (keep[cls]) {
      if (anchor_of[cls] == -1) {
        out_edges.push_back({up_anchor, cls, up_dist});
        anchor_of[cls] = cls;
        anchor_dist[cls] = 0;
      }
    } else if (anchor_of[cls] == -1) {
      anchor_of[cls] = up_anchor;
      anchor_dist[cls] = up_dist;
    }
  }

  // optional epsilon smoothing: collapse contracted edges not longer than
  // epsilon, then re-contract degree-2 chains; eps_remap keeps grid points
  // attached to surviving classes, spliced chain points drop out
  std::map<int, int> eps_remap;
  std::set<int> spliced;
  if (epsilon > 0) {
    std::function<int(int)> eps_find = [&](int x) {
      auto it = eps_remap.find(x);
      if (it == eps_remap.end() || it->second == x) return x;
      int r = eps_find(it->second);
      eps_remap[x] = r;
      return r;
    };
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i < out_edges.size() && !changed; ++i) {
        if (e.scale * out_edges[i].units <= epsilon) {
          int a = eps_find(out_edges[i].u), b = eps_find(out_edges[i].v);
          out_edges.erase(out_edges.begin() + i);
          if (a != b) eps_remap[std::max(a, b)] = std::min(a, b);
          for (auto& ed : out_edges) {
            ed.u = eps_find(ed.u);
            ed.v = eps_find(ed.v);
          }
          changed = true;
        }
      }
      if (changed) continue;
      std::map<int, std::vector<std::size_t>> incident;
      for (std::size_t i = 0; i < out_edges.size(); ++i) {
        incident[out_edges[i].u].push_back(i);
        incident[out_edges[i].v].push_back(i);
      }
      for (const auto& [cls, inc] : incident) {
        if (inc.size() != 2) continue;
        auto &e1 = out_edges[inc[0]], &e2 = out_edges[inc[1]];
        int a = e1.u == cls ? e1.v : e1.u;
        int b = e2.u == cls ? e2.v : e2.u;
        e1 = {a, b, e1.units + e2.units};
        out_edges.erase(out_edges.begin() + inc[1]);
        spliced.insert(cls);
        changed = true;
        break;
      }
    }
  }

  std::map<int, int> vertex_id;
  std::vector<VertexData> vs;
  auto vid = [&](int cls) {
    auto [it, fresh] = vertex_id.try_emplace(cls, static_cast<int>(vs.size()));
    if (fresh) {
      VertexData d;
      d.id = it->second;
      vs.push_back(d);
    }
    return it->second;
  };
  std::vector<EdgeData> es;
  for (const auto& ed : out_edges) es.push_back({vid(ed.u), vid(ed.v), e.scale * ed.units});
  if (vs.size() < 2) fail(Errc::NotAnExcursion, "quotient degenerates to a point");

  CrtQuotient out{SimplicialMetricTree(std::move(vs), std::move(es), MetricMode::Geodesic), {}, 0};
  out.vertex_of_grid.assign(m + 1, -1);
  for (std::size_t i = 0; i <= m; ++i) {
    int cls = find(node_of_grid[i]);
    for (auto it = eps_remap.find(cls); it != eps_remap.end() && it->second != cls;
         it = eps_remap.find(cls))
      cls = it->second;
    if (spliced.count(cls)) continue;
    auto it = vertex_id.find(cls);
    if (it != vertex_id.end()) out.vertex_of_grid[i] = out.tree.index_of_id(it->second);
  }
  for (int v = 0; v < out.tree.vertex_count(); ++v)
    out.max_degree = std::max(out.max_degree, out.tree.degree(v));
  return out;
}

}  // namespace csst
