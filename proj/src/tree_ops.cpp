#include "csst/tree_ops.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace csst {

namespace {

MLen arc_diameter(const SimplicialMetricTree& t, const std::vector<TreePoint>& stops,
                  const Rational& length) {
  if (t.mode() == MetricMode::Geodesic) return MLen::from_value(length);
  Rational best(0);
  std::vector<std::pair<Rational, Rational>> ps;
  ps.reserve(stops.size());
  for (const auto& s : stops) ps.push_back(t.point_position(s));
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j) {
      Rational dx = ps[i].first - ps[j].first, dy = ps[i].second - ps[j].second;
      best = std::max(best, Rational(dx * dx + dy * dy));
    }
  return MLen::from_sq(best);
}

}  // namespace

ArcResult arc(const SimplicialMetricTree& t, const TreePoint& x, const TreePoint& y) {
  t.check_point(x);
  t.check_point(y);
  ArcResult out;
  if (x == y) {
    out.stops = {x};
    out.length = 0;
    out.diameter = MLen::from_value(Rational(0));
    return out;
  }
  auto push_vertex_run = [&](const std::vector<int>& vs) {
    for (int v : vs) {
      TreePoint p = TreePoint::at_vertex(v);
      if (!out.stops.empty() && out.stops.back() == p) continue;
      out.stops.push_back(p);
    }
  };
  if (x.is_vertex() && y.is_vertex()) {
    push_vertex_run(t.path_vertices(x.vertex, y.vertex));
    out.length = t.path_length(x.vertex, y.vertex);
  } else if (!x.is_vertex() && !y.is_vertex() && x.edge == y.edge) {
    const auto& e = t.edge(x.edge);
    out.stops = {x, y};
    Rational dt = x.t < y.t ? y.t - x.t : x.t - y.t;
    out.length = dt * e.len;
  } else {
    // Resolve each interior endpoint to (exit vertex, partial length).
    auto resolve = [&](const TreePoint& p, int toward) -> std::pair<int, Rational> {
      // p interior on edge (a,b); `toward` is any vertex not interior to that edge
      const auto& e = t.edge(p.edge);
      if (toward == e.v || (toward != e.u && t.on_path(e.v, e.u, toward)))
        return {e.v, (Rational(1) - p.t) * e.len};
      return {e.u, p.t * e.len};
    };
    int xv, yv;
    Rational xpart(0), ypart(0);
    if (x.is_vertex()) {
      xv = x.vertex;
    } else {
      int probe = y.is_vertex() ? y.vertex : t.edge(y.edge).u;
      auto [v, part] = resolve(x, probe);
      xv = v;
      xpart = part;
    }
    if (y.is_vertex()) {
      yv = y.vertex;
    } else {
      auto [v, part] = resolve(y, xv);
      yv = v;
      ypart = part;
    }
    if (!x.is_vertex()) out.stops.push_back(x);
    push_vertex_run(t.path_vertices(xv, yv));
    if (!y.is_vertex()) out.stops.push_back(y);
    out.length = xpart + t.path_length(xv, yv) + ypart;
  }
  out.diameter = arc_diameter(t, out.stops, out.length);
  return out;
}

Rational point_distance(const SimplicialMetricTree& t, const TreePoint& x, const TreePoint& y) {
  return arc(t, x, y).length;
}

namespace {

// Rerooting DP over directed edges: for the direction (u -> v) it yields the
// max distance from u into the branch beyond v and that branch's diameter.
struct DirectedData {
  std::vector<Rational> down_h, down_dc, up_h, up_dc;  // indexed by vertex
};

struct Top3 {
  // (value, key) best three
  Rational v[3];
  int k[3] = {-1, -1, -1};
  void offer(const Rational& val, int key) {
    if (k[0] == -1 || val > v[0]) {
      v[2] = v[1]; k[2] = k[1];
      v[1] = v[0]; k[1] = k[0];
      v[0] = val; k[0] = key;
    } else if (k[1] == -1 || val > v[1]) {
      v[2] = v[1]; k[2] = k[1];
      v[1] = val; k[1] = key;
    } else if (k[2] == -1 || val > v[2]) {
      v[2] = val; k[2] = key;
    }
  }
  Rational max_excluding(int key) const {
    if (k[0] != -1 && k[0] != key) return v[0];
    if (k[1] != -1) return v[1];
    return Rational(0);
  }
  Rational pair_sum_excluding(int key) const {
    Rational a(-1), b(-1);
    for (int i = 0; i < 3; ++i) {
      if (k[i] == -1 || k[i] == key) continue;
      if (a < 0)
        a = v[i];
      else if (b < 0) {
        b = v[i];
        break;
      }
    }
    if (a < 0) return Rational(0);
    if (b < 0) return a;
    return a + b;
  }
};

DirectedData directed_branch_data(const SimplicialMetricTree& t) {
  int n = t.vertex_count();
  DirectedData d;
  d.down_h.assign(n, Rational(0));
  d.down_dc.assign(n, Rational(0));
  d.up_h.assign(n, Rational(0));
  d.up_dc.assign(n, Rational(0));

  std::vector<int> parent(n, -1), order;
  std::vector<Rational> parent_len(n, Rational(0));
  order.reserve(n);
  order.push_back(0);
  std::vector<char> seen(n, 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    int u = order[i];
    for (auto [e, w] : t.neighbors(u))
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = u;
        parent_len[w] = t.edge(e).len;
        order.push_back(w);
      }
  }
  // downward: h(parent->v), dc(parent->v)
  for (std::size_t i = order.size(); i-- > 0;) {
    int v = order[i];
    if (parent[v] < 0) continue;
    Top3 hs;
    Rational dcmax(0);
    for (auto [e, w] : t.neighbors(v)) {
      (void)e;
      if (w == parent[v]) continue;
      hs.offer(d.down_h[w], w);
      dcmax = std::max(dcmax, d.down_dc[w]);
    }
    d.down_h[v] = parent_len[v] + hs.max_excluding(-2);
    d.down_dc[v] = std::max(dcmax, hs.pair_sum_excluding(-2));
  }
  // upward: h(v->parent), dc(v->parent)
  for (std::size_t i = 0; i < order.size(); ++i) {
    int p = order[i];
    Top3 hs;
    Rational dc_top1(0), dc_top2(0);
    int dc_k1 = -1;
    for (auto [e, w] : t.neighbors(p)) {
      (void)e;
      Rational h = (w == parent[p]) ? d.up_h[p] : d.down_h[w];
      Rational dc = (w == parent[p]) ? d.up_dc[p] : d.down_dc[w];
      int key = (w == parent[p]) ? -3 : w;
      if (parent[p] < 0 && w == parent[p]) continue;
      hs.offer(h, key);
      if (dc_k1 == -1 || dc > dc_top1) {
        dc_top2 = dc_top1;
        dc_top1 = dc;
        dc_k1 = key;
      } else if (dc > dc_top2) {
        dc_top2 = dc;
      }
    }
    for (auto [e, c] : t.neighbors(p)) {
      if (c == parent[p]) continue;
      Rational len = t.edge(e).len;
      d.up_h[c] = len + hs.max_excluding(c);
      Rational dcmax = (dc_k1 == c) ? dc_top2 : dc_top1;
      d.up_dc[c] = std::max(dcmax, hs.pair_sum_excluding(c));
    }
  }
  return d;
}

// Branch vertex sets of p, one per incident direction (used in Euclidean mode).
std::vector<std::vector<int>> branch_vertex_sets(const SimplicialMetricTree& t, int p) {
  std::vector<std::vector<int>> out;
  for (auto [e, w] : t.neighbors(p)) {
    (void)e;
    std::vector<int> comp{p};
    std::vector<int> stack{w};
    std::set<int> seen{p, w};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      comp.push_back(u);
      for (auto [e2, z] : t.neighbors(u)) {
        (void)e2;
        if (!seen.count(z)) {
          seen.insert(z);
          stack.push_back(z);
        }
      }
    }
    out.push_back(std::move(comp));
  }
  return out;
}

MLen euclid_set_diameter(const SimplicialMetricTree& t, const std::vector<int>& vs) {
  Rational best(0);
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      best = std::max(best, t.dist_sq(vs[i], vs[j]));
  return MLen::from_sq(best);
}

}  // namespace

HeightRecord branches_and_height(const SimplicialMetricTree& t, const TreePoint& p) {
  t.check_point(p);
  HeightRecord rec;
  rec.point = p;
  if (!p.is_vertex()) {
    // interior point: two sides, no height
    const auto& e = t.edge(p.edge);
    auto restricted_diam = [&](int block, int start, const Rational& stub) -> MLen {
      // component of T \ {interior p} through start; block = other endpoint
      std::vector<int> comp;
      std::vector<int> stack{start};
      std::set<int> seen{start};
      while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        comp.push_back(u);
        for (auto [e2, z] : t.neighbors(u)) {
          if (u == start && z == block && e2 == p.edge) continue;
          if (!seen.count(z)) {
            seen.insert(z);
            stack.push_back(z);
          }
        }
      }
      if (t.mode() == MetricMode::EuclideanEmbedded) {
        auto pp = t.point_position(p);
        Rational best(0);
        for (std::size_t i = 0; i < comp.size(); ++i) {
          auto qi = *t.position(comp[i]);
          Rational dx = qi.first - pp.first, dy = qi.second - pp.second;
          best = std::max(best, Rational(dx * dx + dy * dy));
          for (std::size_t j = i + 1; j < comp.size(); ++j)
            best = std::max(best, t.dist_sq(comp[i], comp[j]));
        }
        return MLen::from_sq(best);
      }
      // geodesic: farthest-from-p then farthest-from-that within component
      auto far_from = [&](auto dist0) {
        Rational best(0);
        int arg = comp[0];
        for (int v : comp) {
          Rational dv = dist0(v);
          if (dv > best) {
            best = dv;
            arg = v;
          }
        }
        return std::make_pair(arg, best);
      };
      auto [u1, d1] = far_from([&](int v) { return stub + t.path_length(start, v); });
      (void)d1;
      auto [u2, d2] = far_from([&](int v) { return t.path_length(u1, v); });
      (void)u2;
      Rational dfromp = stub + t.path_length(start, u1);
      return MLen::from_value(std::max(d2, dfromp));
    };
    const Rational lu = p.t * e.len, lv = (Rational(1) - p.t) * e.len;
    rec.branch_diameters.push_back(restricted_diam(e.v, e.u, lu));
    rec.branch_diameters.push_back(restricted_diam(e.u, e.v, lv));
    std::sort(rec.branch_diameters.begin(), rec.branch_diameters.end(),
              [](const MLen& a, const MLen& b) { return b < a; });
    return rec;
  }

  int v = p.vertex;
  if (t.mode() == MetricMode::Geodesic) {
    DirectedData d = directed_branch_data(t);
    // direction indexed by neighbor; figure out down/up by BFS parent relation
    std::vector<int> parent(t.vertex_count(), -1);
    std::vector<int> order{0};
    std::vector<char> seen(t.vertex_count(), 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (auto [e, w] : t.neighbors(order[i]))
        if (!seen[w]) {
          (void)e;
          seen[w] = 1;
          parent[w] = order[i];
          order.push_back(w);
        }
    for (auto [e, w] : t.neighbors(v)) {
      (void)e;
      Rational h = (w == parent[v]) ? d.up_h[v] : d.down_h[w];
      Rational dc = (w == parent[v]) ? d.up_dc[v] : d.down_dc[w];
      rec.branch_diameters.push_back(MLen::from_value(std::max(h, dc)));
    }
  } else {
    for (auto& comp : branch_vertex_sets(t, v))
      rec.branch_diameters.push_back(euclid_set_diameter(t, comp));
  }
  std::sort(rec.branch_diameters.begin(), rec.branch_diameters.end(),
            [](const MLen& a, const MLen& b) { return b < a; });
  if (rec.branch_diameters.size() >= 3) rec.height = rec.branch_diameters[2];
  return rec;
}

std::vector<std::optional<MLen>> all_vertex_heights(const SimplicialMetricTree& t) {
  int n = t.vertex_count();
  std::vector<std::optional<MLen>> out(n);
  if (t.mode() == MetricMode::Geodesic) {
    DirectedData d = directed_branch_data(t);
    std::vector<int> parent(n, -1);
    std::vector<int> order{0};
    std::vector<char> seen(n, 0);
    seen[0] = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (auto [e, w] : t.neighbors(order[i]))
        if (!seen[w]) {
          (void)e;
          seen[w] = 1;
          parent[w] = order[i];
          order.push_back(w);
        }
    for (int v = 0; v < n; ++v) {
      if (t.degree(v) < 3) continue;
      std::vector<Rational> diams;
      for (auto [e, w] : t.neighbors(v)) {
        (void)e;
        Rational h = (w == parent[v]) ? d.up_h[v] : d.down_h[w];
        Rational dc = (w == parent[v]) ? d.up_dc[v] : d.down_dc[w];
        diams.push_back(std::max(h, dc));
      }
      std::sort(diams.begin(), diams.end(), std::greater<>());
      out[v] = MLen::from_value(diams[2]);
    }
    return out;
  }
  if (n > 1500) fail(Errc::BudgetExceeded, "bulk Euclidean heights capped at 1500 vertices");
  for (int v = 0; v < n; ++v) {
    if (t.degree(v) < 3) continue;
    auto rec = branches_and_height(t, TreePoint::at_vertex(v));
    out[v] = rec.height;
  }
  return out;
}

Decomposition decompose(const SimplicialMetricTree& t, std::vector<int> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  for (int v : cuts) {
    if (v < 0 || v >= t.vertex_count()) fail(Errc::InvalidPoint, "cut vertex out of range");
    if (t.is_leaf(v)) fail(Errc::LeafInCutSet, "vertex " + std::to_string(t.user_id(v)));
  }
  std::vector<char> is_cut(t.vertex_count(), 0);
  for (int v : cuts) is_cut[v] = 1;

  // union edges sharing a non-cut vertex
  std::vector<int> uf(t.edge_count());
  std::iota(uf.begin(), uf.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (uf[x] != x) x = uf[x] = uf[uf[x]];
    return x;
  };
  for (int v = 0; v < t.vertex_count(); ++v) {
    if (is_cut[v]) continue;
    const auto& nb = t.neighbors(v);
    for (std::size_t i = 1; i < nb.size(); ++i) {
      int a = find(nb[0].first), b = find(nb[i].first);
      if (a != b) uf[std::max(a, b)] = std::min(a, b);
    }
  }
  std::map<int, int> tile_id;
  Decomposition out;
  out.cuts = cuts;
  out.tile_of_edge.assign(t.edge_count(), -1);
  for (int e = 0; e < t.edge_count(); ++e) {
    int r = find(e);
    auto [it, fresh] = tile_id.try_emplace(r, static_cast<int>(out.tiles.size()));
    if (fresh) {
      Tile tl;
      tl.id = it->second;
      out.tiles.push_back(tl);
    }
    out.tiles[it->second].edges.push_back(e);
    out.tile_of_edge[e] = it->second;
  }
  for (auto& tl : out.tiles) {
    std::set<int> vs;
    for (int e : tl.edges) {
      vs.insert(t.edge(e).u);
      vs.insert(t.edge(e).v);
    }
    tl.vertices.assign(vs.begin(), vs.end());
    for (int v : tl.vertices)
      if (is_cut[v]) tl.boundary.push_back(v);
  }
  return out;
}

RefineReport refine(const SimplicialMetricTree& t, const Decomposition& coarse,
                    std::vector<int> finer_cuts) {
  std::sort(finer_cuts.begin(), finer_cuts.end());
  finer_cuts.erase(std::unique(finer_cuts.begin(), finer_cuts.end()), finer_cuts.end());
  if (!std::includes(finer_cuts.begin(), finer_cuts.end(), coarse.cuts.begin(),
                     coarse.cuts.end()))
    fail(Errc::NotASuperset, "finer cut set must contain the coarse cut set");
  RefineReport rep;
  rep.fine = decompose(t, finer_cuts);
  std::vector<char> in_coarse_cuts(t.vertex_count(), 0);
  for (int v : coarse.cuts) in_coarse_cuts[v] = 1;
  for (const auto& ft : rep.fine.tiles) {
    RefineEntry e;
    e.fine_tile = ft.id;
    e.coarse_tile = coarse.tile_of_edge[ft.edges.front()];
    for (int ed : ft.edges)
      if (coarse.tile_of_edge[ed] != e.coarse_tile)
        fail(Errc::InvalidInput, "fine tile straddles coarse tiles");
    for (int b : ft.boundary)
      if (!in_coarse_cuts[b]) e.relative_boundary.push_back(b);
    rep.entries.push_back(std::move(e));
  }
  return rep;
}

CenterResult center(const SimplicialMetricTree& t, const TreePoint& x, const TreePoint& y,
                    const TreePoint& z) {
  ArcResult axy = arc(t, x, y);
  Rational dxy = axy.length;
  Rational dxz = point_distance(t, x, z);
  Rational dyz = point_distance(t, y, z);
  Rational offset = (dxy + dxz - dyz) / 2;  // distance from x to the meet point

  CenterResult out;
  // walk the arc x->y accumulating length
  Rational acc(0);
  TreePoint c = axy.stops.front();
  for (std::size_t i = 0; i + 1 < axy.stops.size() && acc < offset; ++i) {
    const TreePoint& a = axy.stops[i];
    const TreePoint& b = axy.stops[i + 1];
    Rational seg = point_distance(t, a, b);
    if (acc + seg >= offset) {
      Rational rem = offset - acc;
      if (rem == 0) {
        c = a;
      } else if (rem == seg) {
        c = b;
      } else {
        // interior of the edge between a and b
        int eidx = -1;
        const auto pick_edge = [&](int u, int v) {
          for (auto [e, w] : t.neighbors(u))
            if (w == v) return e;
          return -1;
        };
        if (a.is_vertex() && b.is_vertex()) {
          eidx = pick_edge(a.vertex, b.vertex);
          const auto& e = t.edge(eidx);
          Rational frac = rem / e.len;
          c = (e.u == a.vertex) ? TreePoint::interior(eidx, frac)
                                : TreePoint::interior(eidx, Rational(1) - frac);
        } else {
          // sub-segment with an interior endpoint: same host edge
          eidx = a.is_vertex() ? b.edge : a.edge;
          const auto& e = t.edge(eidx);
          Rational ta = a.is_vertex() ? (a.vertex == e.u ? Rational(0) : Rational(1)) : a.t;
          Rational tb = b.is_vertex() ? (b.vertex == e.u ? Rational(0) : Rational(1)) : b.t;
          Rational tc = ta + (tb - ta) * (rem / (point_distance(t, a, b)));
          c = TreePoint::interior(eidx, tc);
        }
      }
      acc = offset;
      break;
    }
    acc += seg;
    c = b;
  }
  out.center = c;

  auto vertex_height = [&](const TreePoint& p) -> std::optional<MLen> {
    if (!p.is_vertex() || !t.is_branch_point(p.vertex)) return std::nullopt;
    return branches_and_height(t, p).height;
  };
  auto hx = vertex_height(x), hy = vertex_height(y), hz = vertex_height(z);
  if (hx && hy && hz) {
    MLen m = *hx;
    if (*hy < m) m = *hy;
    if (*hz < m) m = *hz;
    out.height_lower_bound = m;
  }
  return out;
}

namespace {

std::vector<int> strided_subset(int n, std::size_t limit) {
  std::vector<int> out;
  if (static_cast<std::size_t>(n) <= limit) {
    out.resize(n);
    std::iota(out.begin(), out.end(), 0);
    return out;
  }
  int step = static_cast<int>((n + limit - 1) / limit);
  for (int i = 0; i < n; i += step) out.push_back(i);
  return out;
}

}  // namespace

GeometricConstantsReport geometric_constants(const SimplicialMetricTree& t,
                                             const GeometricBudget& budget) {
  GeometricConstantsReport rep;
  int n = t.vertex_count();

  // bounded turning
  if (t.mode() == MetricMode::Geodesic) {
    rep.bounded_turning = {Rational(1), 1.0, true, "geodesic metric: diam[x,y] = |x-y|"};
  } else {
    std::size_t pair_limit = budget.pair_budget;
    std::size_t m = 1;
    while ((m + 1) * m / 2 <= pair_limit) ++m;
    auto subset = strided_subset(n, m);
    Rational best(0);
    std::string witness;
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (std::size_t j = i + 1; j < subset.size(); ++j) {
        int u = subset[i], v = subset[j];
        Rational d2 = t.dist_sq(u, v);
        if (d2 == 0) fail(Errc::DegenerateMetric, "coincident embedded vertices");
        ArcResult a = arc(t, TreePoint::at_vertex(u), TreePoint::at_vertex(v));
        Rational r = a.diameter.sq / d2;
        if (r > best) {
          best = r;
          witness = std::to_string(t.user_id(u)) + "-" + std::to_string(t.user_id(v));
        }
      }
    rep.bounded_turning = {best, std::sqrt(to_double(best)),
                           subset.size() == static_cast<std::size_t>(n), witness};
  }

  auto heights = all_vertex_heights(t);
  std::vector<int> bps = t.branch_points();

  if (bps.size() >= 2) {
    Rational best(-1);
    std::string witness;
    bool exact = bps.size() * (bps.size() - 1) / 2 <= budget.pair_budget;
    std::size_t m = 1;
    while ((m + 1) * m / 2 <= budget.pair_budget) ++m;
    std::vector<int> idx = strided_subset(static_cast<int>(bps.size()), m);
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        int p = bps[idx[i]], q = bps[idx[j]];
        Rational minh_sq = std::min(heights[p]->sq, heights[q]->sq);
        Rational r = t.dist_sq(p, q) / minh_sq;
        if (best < 0 || r < best) {
          best = r;
          witness = std::to_string(t.user_id(p)) + "-" + std::to_string(t.user_id(q));
        }
      }
    rep.separation = ConstantEstimate{best, std::sqrt(to_double(best)), exact, witness};
  }

  if (!bps.empty()) {
    Rational best(-1);
    std::string witness;
    std::size_t m = 1;
    while ((m + 1) * m / 2 <= budget.pair_budget) ++m;
    auto subset = strided_subset(n, m);
    bool exact = subset.size() == static_cast<std::size_t>(n);
    for (std::size_t i = 0; i < subset.size(); ++i)
      for (std::size_t j = i + 1; j < subset.size(); ++j) {
        int u = subset[i], v = subset[j];
        ArcResult a = arc(t, TreePoint::at_vertex(u), TreePoint::at_vertex(v));
        Rational besth(-1);
        for (const auto& s : a.stops)
          if (s.is_vertex() && t.is_branch_point(s.vertex))
            besth = std::max(besth, heights[s.vertex]->sq);
        if (besth < 0) {
          ++rep.density_pairs_without_witness;
          continue;
        }
        Rational r = besth / a.diameter.sq;
        if (best < 0 || r < best) {
          best = r;
          witness = std::to_string(t.user_id(u)) + "-" + std::to_string(t.user_id(v));
        }
      }
    if (best >= 0)
      rep.density = ConstantEstimate{best, std::sqrt(to_double(best)), exact, witness};
  }

  // doubling: greedy half-radius covers over a deterministic sample
  MLen diam = t.diameter();
  int worst = 0;
  for (int c : strided_subset(n, budget.ball_centers)) {
    for (int j = 1; j <= budget.ball_radii; ++j) {
      Rational r_sq = diam.sq / rational_pow(Rational(4), static_cast<unsigned>(j));
      Rational half_sq = r_sq / 4;
      std::vector<int> ball;
      for (int v = 0; v < n; ++v)
        if (t.dist_sq(c, v) <= r_sq) ball.push_back(v);
      std::vector<char> covered(ball.size(), 0);
      int count = 0;
      for (std::size_t i = 0; i < ball.size(); ++i) {
        if (covered[i]) continue;
        ++count;  // ball of radius r/2 at the lowest uncovered vertex
        for (std::size_t k = i; k < ball.size(); ++k)
          if (!covered[k] && t.dist_sq(ball[i], ball[k]) <= half_sq) covered[k] = 1;
      }
      worst = std::max(worst, count);
    }
  }
  rep.doubling_estimate = worst;
  return rep;
}

}  // namespace csst
