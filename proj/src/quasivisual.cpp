#include "csst/quasivisual.hpp"

#include "csst/errors.hpp"
#include "csst/util.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace csst {

std::vector<int> Cover::tiles_containing(int, int) const {
  fail(Errc::InvalidInput, "cover has no registered points");
}

SqBracket Cover::point_dist_sq(int, int) const {
  fail(Errc::InvalidInput, "cover has no registered points");
}

// ---------------------------------------------------------------------------
// WordCover

WordCover::WordCover(std::vector<std::vector<Word>> levels, int dist_sample_depth)
    : levels_(std::move(levels)), sample_depth_(dist_sample_depth) {
  if (levels_.empty()) fail(Errc::EmptyLevel, "cover needs at least level 0");
  if (levels_[0].size() != 1 || !levels_[0][0].empty())
    fail(Errc::InvalidInput, "level 0 must be the whole space");
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    if (levels_[n].empty()) fail(Errc::EmptyLevel, "level " + std::to_string(n) + " is empty");
    std::sort(levels_[n].begin(), levels_[n].end());
  }
  bbox_.resize(levels_.size());
  diam_sq_.resize(levels_.size());
  centers_.resize(levels_.size());
  for (std::size_t n = 0; n < levels_.size(); ++n)
    for (const Word& w : levels_[n]) {
      bbox_[n].push_back(tile_bbox(w));
      Rational d = pow2(1 - static_cast<long>(w.length()));
      diam_sq_[n].push_back(d * d);
      centers_[n].push_back(apply_word(w, DyadicPoint::integer(0, 0)));
    }
}

WordCover WordCover::full_levels(int depth) {
  std::vector<std::vector<Word>> levels;
  for (int n = 0; n <= depth; ++n) levels.push_back(words_of_length(n));
  return WordCover(std::move(levels));
}

SqBracket WordCover::diam_sq(int level, int tile) const {
  return {diam_sq_[level][tile], diam_sq_[level][tile], true};
}

SqBracket WordCover::dist_sq(int l1, int t1, int l2, int t2) const {
  const Word& a = levels_[l1][t1];
  const Word& b = levels_[l2][t2];
  if (tiles_intersect(a, b)) return {Rational(0), Rational(0), true};
  // separated bounding boxes certify positivity cheaply; the center-center
  // distance serves as the upper end of the bracket
  Rational gap = box_gap_sq(bbox_[l1][t1], bbox_[l2][t2]);
  if (gap > 0)
    return {gap, euclidean_dist_sq(centers_[l1][t1], centers_[l2][t2]), false};
  // boxes overlap: fall back to the certified sampling bracket
  auto key = std::make_pair(a.str(), b.str());
  auto it = dist_cache_.find(key);
  if (it == dist_cache_.end()) {
    DistBracket br = tile_dist_bracket(a, b, sample_depth_);
    for (int depth = sample_depth_ + 2; br.lo_sq == 0 && depth <= sample_depth_ + 6; depth += 2)
      br = tile_dist_bracket(a, b, depth);
    it = dist_cache_.emplace(key, br).first;
  }
  return {it->second.lo_sq, it->second.hi_sq, false};
}

bool WordCover::touches(int l1, int t1, int l2, int t2) const {
  return tiles_intersect(levels_[l1][t1], levels_[l2][t2]);
}

std::string WordCover::tile_name(int level, int tile) const {
  const Word& w = levels_[level][tile];
  return "T_" + (w.empty() ? std::string("()") : w.str());
}

int WordCover::add_point(const Anchor& a) {
  points_.push_back(a);
  point_values_.push_back(a.point());
  return static_cast<int>(points_.size()) - 1;
}

std::vector<int> WordCover::tiles_containing(int level, int point) const {
  std::vector<int> out;
  for (std::size_t i = 0; i < levels_[level].size(); ++i)
    if (point_in_tile(levels_[level][i], point_values_[point])) out.push_back(static_cast<int>(i));
  return out;
}

SqBracket WordCover::point_dist_sq(int a, int b) const {
  Rational d = euclidean_dist_sq(point_values_[a], point_values_[b]);
  return {d, d, true};
}

// ---------------------------------------------------------------------------
// TreeCover

TreeCover::TreeCover(const SimplicialMetricTree& tree, std::vector<Decomposition> levels)
    : tree_(tree), levels_(std::move(levels)) {
  if (levels_.empty()) fail(Errc::EmptyLevel, "cover needs at least level 0");
  if (levels_[0].tiles.size() != 1) fail(Errc::InvalidInput, "level 0 must be the whole space");
  diam_cache_.resize(levels_.size());
  for (std::size_t n = 0; n < levels_.size(); ++n) {
    if (levels_[n].tiles.empty()) fail(Errc::EmptyLevel, "level " + std::to_string(n));
    diam_cache_[n].resize(levels_[n].tiles.size());
    for (std::size_t t = 0; t < levels_[n].tiles.size(); ++t)
      diam_cache_[n][t] = tile_diameter(static_cast<int>(n), static_cast<int>(t));
  }
}

MLen TreeCover::tile_diameter(int level, int tile) const {
  const Tile& tl = levels_[level].tiles[tile];
  if (tree_.mode() == MetricMode::EuclideanEmbedded) {
    Rational best(0);
    for (std::size_t i = 0; i < tl.vertices.size(); ++i)
      for (std::size_t j = i + 1; j < tl.vertices.size(); ++j)
        best = std::max(best, tree_.dist_sq(tl.vertices[i], tl.vertices[j]));
    return MLen::from_sq(best);
  }
  // geodesic: restricted double sweep over the tile's edges
  std::set<int> allowed(tl.edges.begin(), tl.edges.end());
  auto far_from = [&](int src) {
    std::map<int, Rational> d;
    d[src] = 0;
    std::vector<int> stack{src};
    std::pair<int, Rational> best{src, Rational(0)};
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      if (d[u] > best.second) best = {u, d[u]};
      for (auto [e, w] : tree_.neighbors(u)) {
        if (!allowed.count(e) || d.count(w)) continue;
        d[w] = d[u] + tree_.edge(e).len;
        stack.push_back(w);
      }
    }
    return best;
  };
  auto [u, du] = far_from(tl.vertices.front());
  (void)du;
  auto [v, dv] = far_from(u);
  (void)v;
  return MLen::from_value(dv);
}

SqBracket TreeCover::diam_sq(int level, int tile) const {
  const MLen& m = diam_cache_[level][tile];
  return {m.sq, m.sq, true};
}

namespace {

Rational segment_dist_sq(const std::pair<Rational, Rational>& a1,
                         const std::pair<Rational, Rational>& a2,
                         const std::pair<Rational, Rational>& b1,
                         const std::pair<Rational, Rational>& b2) {
  auto sub = [](const auto& p, const auto& q) {
    return std::make_pair(Rational(p.first - q.first), Rational(p.second - q.second));
  };
  auto dot = [](const auto& p, const auto& q) {
    return Rational(p.first * q.first + p.second * q.second);
  };
  auto point_seg = [&](const std::pair<Rational, Rational>& p,
                       const std::pair<Rational, Rational>& u,
                       const std::pair<Rational, Rational>& v) {
    auto d = sub(v, u);
    auto w = sub(p, u);
    Rational dd = dot(d, d);
    if (dd == 0) return dot(w, w);
    Rational t = dot(w, d) / dd;
    if (t < 0) t = 0;
    if (t > 1) t = 1;
    std::pair<Rational, Rational> proj{u.first + t * d.first, u.second + t * d.second};
    auto r = sub(p, proj);
    return dot(r, r);
  };
  auto orient = [&](const auto& p, const auto& q, const auto& r) {
    Rational v = (q.first - p.first) * (r.second - p.second) -
                 (q.second - p.second) * (r.first - p.first);
    return v == 0 ? 0 : (v > 0 ? 1 : -1);
  };
  int o1 = orient(a1, a2, b1), o2 = orient(a1, a2, b2);
  int o3 = orient(b1, b2, a1), o4 = orient(b1, b2, a2);
  if ((o1 * o2 < 0) && (o3 * o4 < 0)) return Rational(0);
  Rational best = point_seg(a1, b1, b2);
  best = std::min(best, point_seg(a2, b1, b2));
  best = std::min(best, point_seg(b1, a1, a2));
  best = std::min(best, point_seg(b2, a1, a2));
  return best;
}

}  // namespace

SqBracket TreeCover::dist_sq(int l1, int t1, int l2, int t2) const {
  const Tile& x = levels_[l1].tiles[t1];
  const Tile& y = levels_[l2].tiles[t2];
  if (touches(l1, t1, l2, t2)) return {Rational(0), Rational(0), true};
  if (tree_.mode() == MetricMode::Geodesic) {
    // realized between boundary vertices of the two subtrees
    Rational best(-1);
    for (int u : x.boundary)
      for (int v : y.boundary) {
        Rational d = tree_.path_length(u, v);
        if (best < 0 || d < best) best = d;
      }
    if (best < 0) fail(Errc::InvalidInput, "disjoint tile without boundary");
    return {best * best, best * best, true};
  }
  Rational best(-1);
  for (int e : x.edges) {
    auto& ee = tree_.edge(e);
    auto pu = *tree_.position(ee.u), pv = *tree_.position(ee.v);
    for (int f : y.edges) {
      auto& fe = tree_.edge(f);
      Rational d = segment_dist_sq(pu, pv, *tree_.position(fe.u), *tree_.position(fe.v));
      if (best < 0 || d < best) best = d;
    }
  }
  return {best, best, true};
}

bool TreeCover::touches(int l1, int t1, int l2, int t2) const {
  const auto& a = levels_[l1].tiles[t1].vertices;
  const auto& b = levels_[l2].tiles[t2].vertices;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return true;
    if (a[i] < b[j])
      ++i;
    else
      ++j;
  }
  return false;
}

std::string TreeCover::tile_name(int level, int tile) const {
  return "L" + std::to_string(level) + "#" + std::to_string(tile);
}

int TreeCover::add_point(const TreePoint& p) {
  tree_.check_point(p);
  points_.push_back(p);
  return static_cast<int>(points_.size()) - 1;
}

std::vector<int> TreeCover::tiles_containing(int level, int point) const {
  const TreePoint& p = points_[point];
  std::vector<int> out;
  if (!p.is_vertex()) {
    out.push_back(levels_[level].tile_of_edge[p.edge]);
    return out;
  }
  const auto& tiles = levels_[level].tiles;
  for (std::size_t t = 0; t < tiles.size(); ++t)
    if (std::binary_search(tiles[t].vertices.begin(), tiles[t].vertices.end(), p.vertex))
      out.push_back(static_cast<int>(t));
  return out;
}

SqBracket TreeCover::point_dist_sq(int a, int b) const {
  if (tree_.mode() == MetricMode::Geodesic) {
    Rational d = point_distance(tree_, points_[a], points_[b]);
    return {d * d, d * d, true};
  }
  auto pa = tree_.point_position(points_[a]);
  auto pb = tree_.point_position(points_[b]);
  Rational dx = pa.first - pb.first, dy = pa.second - pb.second;
  Rational d = dx * dx + dy * dy;
  return {d, d, true};
}

// ---------------------------------------------------------------------------
// checks

namespace {

double sq_to_value(const Rational& sq) { return std::sqrt(to_double(sq)); }

}  // namespace

QvReport check_quasivisual(const Cover& cover, int max_level, const QvOptions& opts) {
  if (max_level > cover.max_level()) max_level = cover.max_level();
  QvReport rep;
  rep.max_level = max_level;
  for (int n = 0; n <= max_level; ++n)
    if (cover.tile_count(n) == 0) fail(Errc::EmptyLevel, "level " + std::to_string(n));

  rep.same_level_diam.pass = true;
  rep.disjoint_dist.pass = true;
  rep.cross_level_diam.pass = true;

  // (i) + (ii): same-level pair sweeps
  for (int n = 0; n <= max_level; ++n) {
    int count = cover.tile_count(n);
    std::size_t pairs = static_cast<std::size_t>(count) * (count - 1) / 2;
    std::size_t stride = 1;
    if (pairs > opts.pair_budget) {
      stride = (pairs + opts.pair_budget - 1) / opts.pair_budget;
      rep.subsampled = true;
    }
    LevelConstant c1{n, 1.0, Rational(1), stride == 1, ""};
    LevelConstant c2{n, 0.0, Rational(-1), stride == 1, ""};
    bool c2_any = false;
    std::size_t k = 0;
    for (int i = 0; i < count; ++i)
      for (int j = i + 1; j < count; ++j) {
        if (stride > 1 && (k++ % stride)) continue;
        SqBracket di = cover.diam_sq(n, i), dj = cover.diam_sq(n, j);
        if (cover.touches(n, i, n, j)) {
          if (di.hi == 0 && dj.hi == 0) continue;
          if (di.lo == 0 || dj.lo == 0) {
            rep.same_level_diam.pass = false;
            rep.same_level_diam.note =
                "degenerate neighbor: " + cover.tile_name(n, i) + "|" + cover.tile_name(n, j);
            continue;
          }
          Rational r = std::max(Rational(di.hi / dj.lo), Rational(dj.hi / di.lo));
          if (r > c1.value_sq) {
            c1.value_sq = r;
            c1.witness = cover.tile_name(n, i) + "|" + cover.tile_name(n, j);
            c1.certified = c1.certified && di.exact && dj.exact;
          }
        } else {
          SqBracket ds = cover.dist_sq(n, i, n, j);
          if (ds.lo == 0) {
            rep.disjoint_dist.pass = false;
            rep.disjoint_dist.note = "unseparated disjoint pair: " + cover.tile_name(n, i) + "|" +
                                     cover.tile_name(n, j);
            continue;
          }
          Rational dmax = std::max(di.hi, dj.hi);
          if (dmax == 0) continue;
          Rational r = ds.lo / dmax;
          if (!c2_any || r < c2.value_sq) {
            c2_any = true;
            c2.value_sq = r;
            c2.witness = cover.tile_name(n, i) + "|" + cover.tile_name(n, j);
            c2.certified = ds.exact && di.exact && dj.exact;
          }
        }
      }
    c1.value = sq_to_value(c1.value_sq);
    rep.same_level_diam.per_level.push_back(c1);
    if (c2_any) {
      c2.value = sq_to_value(c2.value_sq);
      rep.disjoint_dist.per_level.push_back(c2);
    }
  }

  // (iii): consecutive-level touching pairs
  Rational c3_worst(1);
  for (int n = 0; n < max_level; ++n) {
    LevelConstant c{n, 1.0, Rational(1), true, ""};
    int cn = cover.tile_count(n), cm = cover.tile_count(n + 1);
    std::size_t pairs = static_cast<std::size_t>(cn) * cm;
    std::size_t stride = 1;
    if (pairs > opts.pair_budget) {
      stride = (pairs + opts.pair_budget - 1) / opts.pair_budget;
      rep.subsampled = true;
      c.certified = false;
    }
    std::size_t k = 0;
    for (int i = 0; i < cn; ++i)
      for (int j = 0; j < cm; ++j) {
        if (stride > 1 && (k++ % stride)) continue;
        if (!cover.touches(n, i, n + 1, j)) continue;
        SqBracket di = cover.diam_sq(n, i), dj = cover.diam_sq(n + 1, j);
        if (di.hi == 0 && dj.hi == 0) continue;
        if (di.lo == 0 || dj.lo == 0) {
          rep.cross_level_diam.pass = false;
          rep.cross_level_diam.note = "degenerate parent/child pair";
          continue;
        }
        Rational r = std::max(Rational(di.hi / dj.lo), Rational(dj.hi / di.lo));
        if (r > c.value_sq) {
          c.value_sq = r;
          c.witness = cover.tile_name(n, i) + "|" + cover.tile_name(n + 1, j);
        }
      }
    c.value = sq_to_value(c.value_sq);
    c3_worst = std::max(c3_worst, c.value_sq);
    rep.cross_level_diam.per_level.push_back(c);
  }

  // (iv): smallest k0 with a uniform shrinking factor < 1; a single built
  // level has nothing to shrink and passes vacuously
  if (max_level == 0) rep.shrink_pass = true;
  Rational lambda_sq(-1);
  for (int k0 = 1; k0 <= max_level && !rep.shrink_pass; ++k0) {
    Rational worst(-1);
    bool ok = true;
    for (int n = 0; n + k0 <= max_level && ok; ++n) {
      int cn = cover.tile_count(n), cm = cover.tile_count(n + k0);
      for (int i = 0; i < cn && ok; ++i) {
        SqBracket di = cover.diam_sq(n, i);
        for (int j = 0; j < cm; ++j) {
          if (!cover.touches(n, i, n + k0, j)) continue;
          SqBracket dj = cover.diam_sq(n + k0, j);
          if (di.lo == 0) {
            if (dj.hi != 0) {
              ok = false;
              break;
            }
            continue;
          }
          Rational r = dj.hi / di.lo;
          if (r > worst) worst = r;
          if (worst >= 1) {
            ok = false;
            break;
          }
        }
      }
    }
    if (ok && worst >= 0 && worst < 1) {
      rep.shrink_pass = true;
      rep.k0 = k0;
      lambda_sq = worst;
    }
  }
  if (rep.shrink_pass) {
    rep.lambda = sq_to_value(lambda_sq);
    double c1v = sq_to_value(c3_worst);
    rep.rho = std::pow(rep.lambda, 1.0 / rep.k0);
    rep.C = std::pow(c1v, rep.k0 - 1) * std::pow(rep.lambda, -(rep.k0 - 1.0) / rep.k0);
    rep.tau = std::min(1.0 / c1v, rep.rho);
    rep.alpha = (rep.tau < 1.0 && rep.rho < 1.0) ? std::log(rep.rho) / std::log(rep.tau) : 1.0;
  }

  rep.pass = rep.same_level_diam.pass && rep.disjoint_dist.pass && rep.cross_level_diam.pass &&
             rep.shrink_pass;
  return rep;
}

VisualReport check_visual(const Cover& cover, const Rational& delta, const QvOptions& opts) {
  if (delta <= 0 || delta >= 1) fail(Errc::InvalidInput, "delta must lie in (0,1)");
  VisualReport rep;
  rep.delta = delta;
  int max_level = cover.max_level();
  bool dist_pass = true;
  for (int n = 0; n <= max_level; ++n) {
    Rational dn = rational_pow(delta, static_cast<unsigned>(n));
    Rational dn_sq = dn * dn;
    int count = cover.tile_count(n);
    LevelConstant lo{n, 0, Rational(-1), true, ""}, hi{n, 0, Rational(-1), true, ""};
    for (int t = 0; t < count; ++t) {
      SqBracket d = cover.diam_sq(n, t);
      Rational rlo = d.lo / dn_sq, rhi = d.hi / dn_sq;
      if (lo.value_sq < 0 || rlo < lo.value_sq) {
        lo.value_sq = rlo;
        lo.witness = cover.tile_name(n, t);
      }
      if (hi.value_sq < 0 || rhi > hi.value_sq) {
        hi.value_sq = rhi;
        hi.witness = cover.tile_name(n, t);
      }
    }
    lo.value = sq_to_value(std::max(lo.value_sq, Rational(0)));
    hi.value = sq_to_value(std::max(hi.value_sq, Rational(0)));
    rep.diam_lower.push_back(lo);
    rep.diam_upper.push_back(hi);

    LevelConstant dc{n, 0, Rational(-1), true, ""};
    std::size_t pairs = static_cast<std::size_t>(count) * (count - 1) / 2;
    std::size_t stride =
        pairs > opts.pair_budget ? (pairs + opts.pair_budget - 1) / opts.pair_budget : 1;
    std::size_t k = 0;
    for (int i = 0; i < count; ++i)
      for (int j = i + 1; j < count; ++j) {
        if (stride > 1 && (k++ % stride)) continue;
        if (cover.touches(n, i, n, j)) continue;
        SqBracket ds = cover.dist_sq(n, i, n, j);
        if (ds.lo == 0) {
          dist_pass = false;
          rep.witness = "unseparated pair " + cover.tile_name(n, i) + "|" + cover.tile_name(n, j);
          continue;
        }
        Rational r = ds.lo / dn_sq;
        if (dc.value_sq < 0 || r < dc.value_sq) {
          dc.value_sq = r;
          dc.witness = cover.tile_name(n, i) + "|" + cover.tile_name(n, j);
          dc.certified = ds.exact;
        }
      }
    if (dc.value_sq >= 0) {
      dc.value = sq_to_value(dc.value_sq);
      rep.dist_lower.push_back(dc);
    }
  }

  // pinned pass rule: each family of per-level diameter constants stays
  // within a factor-4 window (16 on squares) across the built levels
  const Rational window(16);
  auto spread_ok = [&](const std::vector<LevelConstant>& cs, const std::string& label) {
    Rational mn(-1), mx(-1);
    for (const auto& c : cs) {
      if (c.value_sq <= 0) {
        rep.witness = label + ": degenerate constant at level " + std::to_string(c.level);
        return false;
      }
      if (mn < 0 || c.value_sq < mn) mn = c.value_sq;
      if (mx < 0 || c.value_sq > mx) mx = c.value_sq;
    }
    if (mn <= 0) return true;
    if (mx / mn > window) {
      rep.witness = label + " drifts by factor " + std::to_string(sq_to_value(Rational(mx / mn)));
      return false;
    }
    return true;
  };
  double worst_spread = 1.0;
  for (const auto* fam : {&rep.diam_lower, &rep.diam_upper}) {
    Rational mn(-1), mx(-1);
    for (const auto& c : *fam) {
      if (mn < 0 || c.value_sq < mn) mn = c.value_sq;
      if (mx < 0 || c.value_sq > mx) mx = c.value_sq;
    }
    if (mn > 0) worst_spread = std::max(worst_spread, sq_to_value(Rational(mx / mn)));
  }
  rep.stability_factor = worst_spread;
  rep.pass = dist_pass && spread_ok(rep.diam_lower, "diam lower constant") &&
             spread_ok(rep.diam_upper, "diam upper constant");
  if (rep.pass) {
    // a visual approximation is in particular quasi-visual
    QvReport qv = check_quasivisual(cover, max_level, opts);
    if (!qv.pass) {
      rep.pass = false;
      rep.witness = "visual conditions hold but the quasi-visual check failed";
    }
  }
  return rep;
}

PairingIndex pairing_index(const Cover& cover, int point_x, int point_y) {
  if (point_x == point_y) fail(Errc::InvalidInput, "pairing index needs distinct points");
  int L = cover.max_level();
  int m = -1;
  for (int n = 0; n <= L; ++n) {
    auto tx = cover.tiles_containing(n, point_x);
    auto ty = cover.tiles_containing(n, point_y);
    if (tx.empty() || ty.empty())
      fail(Errc::InvalidInput, "point not covered at level " + std::to_string(n));
    bool touch = false;
    for (int i : tx) {
      for (int j : ty)
        if (i == j || cover.touches(n, i, n, j)) {
          touch = true;
          break;
        }
      if (touch) break;
    }
    if (touch) m = n;
  }
  if (m == L)
    fail(Errc::BudgetTooShallow,
         "tiles containing the points still meet at the deepest level " + std::to_string(L));
  PairingIndex out;
  out.m = m;
  out.censored = false;
  int tx0 = cover.tiles_containing(m, point_x).front();
  SqBracket d = cover.diam_sq(m, tx0);
  out.diam_at_m = sq_to_value(d.hi);
  SqBracket pd = cover.point_dist_sq(point_x, point_y);
  out.ratio = out.diam_at_m > 0 ? sq_to_value(pd.hi) / out.diam_at_m : 0;
  return out;
}

DistortionFit fit_distortion(const MetricPair& metrics, std::size_t triple_budget,
                             std::uint64_t seed) {
  if (metrics.n < 3) fail(Errc::InvalidInput, "need at least 3 points");
  Rng rng(seed);
  struct Sample {
    Rational t_sq, tp_sq;  // exact squared ratios
    double logt, logtp;
  };
  std::vector<Sample> samples;
  samples.reserve(triple_budget);
  for (std::size_t it = 0; it < triple_budget; ++it) {
    std::size_t x = rng.below(metrics.n);
    std::size_t y = rng.below(metrics.n);
    std::size_t z = rng.below(metrics.n);
    if (x == y || y == z || x == z) continue;
    Rational a1 = metrics.d1_sq(x, y), b1 = metrics.d1_sq(x, z);
    Rational a2 = metrics.d2_sq(x, y), b2 = metrics.d2_sq(x, z);
    if (a1 == 0 || b1 == 0 || a2 == 0 || b2 == 0)
      fail(Errc::DegenerateMetric, "zero distance between distinct sampled points");
    Sample s;
    s.t_sq = a1 / b1;
    s.tp_sq = a2 / b2;
    s.logt = 0.5 * std::log(to_double(s.t_sq));
    s.logtp = 0.5 * std::log(to_double(s.tp_sq));
    samples.push_back(std::move(s));
  }
  if (samples.empty()) fail(Errc::DegenerateMetric, "no usable triples sampled");

  // K(alpha) = 1 is decided exactly on the rational squares: with alpha =
  // k/20, domination by the unit envelope means
  //   t <= 1:  t'^40 <= t^{2k}   i.e.  tp_sq^20 <= t_sq^k
  //   t  > 1:  t'^{2k} <= t^40   i.e.  tp_sq^k  <= t_sq^20
  auto unit_dominates = [&](int k) {
    for (const auto& s : samples) {
      if (s.t_sq <= 1) {
        if (rational_pow(s.tp_sq, 20) > rational_pow(s.t_sq, static_cast<unsigned>(k)))
          return false;
      } else {
        if (rational_pow(s.tp_sq, static_cast<unsigned>(k)) > rational_pow(s.t_sq, 20))
          return false;
      }
    }
    return true;
  };

  DistortionFit best;
  bool have = false;
  bool have_exact = false;
  for (int k = 1; k <= 20; ++k) {
    double alpha = k / 20.0;
    bool exact_unit = unit_dominates(k);
    double K, logK;
    if (exact_unit) {
      K = 1.0;
      logK = 0.0;
    } else {
      double worst = 0;
      bool positive = false;
      for (const auto& s : samples) {
        double env = std::max(alpha * s.logt, s.logt / alpha);
        double r = s.logtp - env;
        if (!positive || r > worst) {
          worst = r;
          positive = true;
        }
      }
      logK = std::max(0.0, worst);
      K = std::exp(logK);
    }
    bool take;
    if (!have)
      take = true;
    else if (exact_unit && !have_exact)
      take = K <= best.coefficient;
    else if (!exact_unit && have_exact)
      take = false;
    else
      take = K < best.coefficient || (K == best.coefficient && alpha > best.alpha);
    if (take) {
      have = true;
      have_exact = exact_unit;
      best.alpha = alpha;
      best.alpha_label = std::to_string(k) + "/20";
      best.coefficient = K;
      double resid = 0;
      if (!exact_unit)
        for (const auto& s : samples) {
          double env = std::max(alpha * s.logt, s.logt / alpha);
          resid = std::max(resid, std::exp((s.logtp - env) - logK) - 1.0);
        }
      best.max_residual = resid;
    }
  }
  best.triples = samples.size();
  return best;
}

}  // namespace csst
