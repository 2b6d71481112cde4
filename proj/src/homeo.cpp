#include "csst/homeo.hpp"

#include "csst/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace csst {

namespace {

struct Component {
  std::vector<int> edges;  // sorted edge indices
  std::vector<int> cuts;   // sorted vertex indices, interior to the component
  std::optional<int> mark_minus, mark_plus;
  std::optional<int> pin;
};

class HomeoBuilder {
 public:
  HomeoBuilder(const SimplicialMetricTree& tree, const Decomposition& decomp)
      : tree_(tree), decomp_(decomp) {}

  void build(const Component& c, const Word& prefix, TileHomeoResult& out) {
    if (c.cuts.empty()) {
      int tile = decomp_.tile_of_edge[c.edges.front()];
      out.tile_words[tile] = prefix;
      return;
    }
    std::set<int> cutset(c.cuts.begin(), c.cuts.end());
    std::set<int> edgeset(c.edges.begin(), c.edges.end());

    std::optional<int> pin_minus, pin_plus;
    std::vector<int> candidates;
    if (c.pin) {
      candidates = {*c.pin};
    } else if (c.mark_minus && c.mark_plus) {
      auto path = tree_.path_vertices(*c.mark_minus, *c.mark_plus);
      std::vector<int> arc_cuts;
      for (std::size_t i = 1; i + 1 < path.size(); ++i)
        if (cutset.count(path[i])) arc_cuts.push_back(path[i]);
      if (arc_cuts.empty())
        fail(Errc::MarkNotInLeafTile, "marked leaves share a tile of the decomposition");
      if (arc_cuts.size() >= 3) {
        candidates.assign(arc_cuts.begin() + 1, arc_cuts.end() - 1);
        pin_minus = arc_cuts.front();
        pin_plus = arc_cuts.back();
      } else {
        candidates = arc_cuts;
      }
    } else if (c.mark_minus || c.mark_plus) {
      int m = c.mark_minus ? *c.mark_minus : *c.mark_plus;
      int anchor = mark_tile_boundary(c, cutset, m);
      for (int v : c.cuts)
        if (v != anchor) candidates.push_back(v);
      if (candidates.empty())
        candidates.push_back(anchor);
      else
        pin_minus = pin_plus = anchor;  // applied only to the mark's branch below
    } else {
      candidates = c.cuts;
    }

    int x = pick_split(c, edgeset, candidates);

    // three branches of x within the component
    auto branches = branches_at(c, edgeset, x);
    if (branches.size() != 3)
      fail(Errc::NotTrivalent, "cut vertex " + std::to_string(tree_.user_id(x)) + " has " +
                                   std::to_string(branches.size()) + " branches");

    int letter_of[3] = {0, 0, 0};
    int br_minus = c.mark_minus ? branch_containing(branches, *c.mark_minus, x) : -1;
    int br_plus = c.mark_plus ? branch_containing(branches, *c.mark_plus, x) : -1;
    if (br_minus >= 0) letter_of[br_minus] = 1;
    if (br_plus >= 0) {
      if (br_plus == br_minus)
        fail(Errc::MarkNotInLeafTile, "both marks fall into one branch of the split vertex");
      letter_of[br_plus] = 2;
    }
    // remaining branches by decreasing diameter, ties by lowest vertex
    std::vector<int> rest;
    for (int b = 0; b < 3; ++b)
      if (letter_of[b] == 0) rest.push_back(b);
    std::sort(rest.begin(), rest.end(), [&](int a, int b) {
      const MLen &da = branches[a].diam, &db = branches[b].diam;
      if (da.sq != db.sq) return db < da;
      return branches[a].lowest_vertex < branches[b].lowest_vertex;
    });
    std::vector<int> free_letters;
    for (int l = 1; l <= 3; ++l)
      if (l != (br_minus >= 0 ? 1 : 0) && l != (br_plus >= 0 ? 2 : 0)) free_letters.push_back(l);
    for (std::size_t i = 0; i < rest.size(); ++i) letter_of[rest[i]] = free_letters[i];

    for (int b = 0; b < 3; ++b) {
      Component sub;
      sub.edges = branches[b].edges;
      for (int v : branches[b].vertices)
        if (v != x && cutset.count(v)) sub.cuts.push_back(v);
      std::sort(sub.cuts.begin(), sub.cuts.end());
      int letter = letter_of[b];
      if (letter == 1) {
        if (b == br_minus) sub.mark_minus = c.mark_minus;
        sub.mark_plus = x;
      } else if (letter == 2) {
        sub.mark_minus = x;
        if (b == br_plus) sub.mark_plus = c.mark_plus;
      } else {
        sub.mark_minus = x;
      }
      if (b == br_minus && pin_minus && *pin_minus != x) sub.pin = pin_minus;
      if (b == br_plus && pin_plus && *pin_plus != x) sub.pin = pin_plus;
      build(sub, prefix.child(letter), out);
    }
    out.vertex_words[x] = prefix;
  }

 private:
  struct Branch {
    std::vector<int> edges;
    std::vector<int> vertices;  // includes x
    MLen diam;
    int lowest_vertex = -1;
  };

  // relative boundary of the (leaf-)tile containing the marked leaf m
  int mark_tile_boundary(const Component& c, const std::set<int>& cutset, int m) {
    int incident = -1;
    for (auto [e, w] : tree_.neighbors(m)) {
      (void)w;
      if (std::binary_search(c.edges.begin(), c.edges.end(), e)) {
        if (incident >= 0) fail(Errc::MarkNotInLeafTile, "mark is not a leaf of the component");
        incident = e;
      }
    }
    if (incident < 0) fail(Errc::InvalidPoint, "mark lies outside the component");
    int tile = decomp_.tile_of_edge[incident];
    int anchor = -1;
    for (int b : decomp_.tiles[tile].boundary)
      if (cutset.count(b)) {
        if (anchor >= 0)
          fail(Errc::MarkNotInLeafTile,
               "mark " + std::to_string(tree_.user_id(m)) + " does not lie in a leaf-tile");
        anchor = b;
      }
    if (anchor < 0)
      fail(Errc::MarkNotInLeafTile,
           "mark " + std::to_string(tree_.user_id(m)) + " has no cut on its tile");
    return anchor;
  }

  std::vector<Branch> branches_at(const Component& c, const std::set<int>& edgeset, int x) {
    std::vector<Branch> out;
    std::set<int> taken;
    for (auto [e0, w0] : tree_.neighbors(x)) {
      if (!edgeset.count(e0) || taken.count(e0)) continue;
      Branch br;
      std::vector<std::pair<int, int>> stack{{e0, w0}};
      std::set<int> seen_e{e0};
      std::set<int> seen_v{x, w0};
      while (!stack.empty()) {
        auto [e, v] = stack.back();
        stack.pop_back();
        br.edges.push_back(e);
        for (auto [e2, w] : tree_.neighbors(v)) {
          if (!edgeset.count(e2) || seen_e.count(e2)) continue;
          if (w == x) continue;
          seen_e.insert(e2);
          seen_v.insert(w);
          stack.push_back({e2, w});
        }
      }
      taken.insert(seen_e.begin(), seen_e.end());
      br.vertices.assign(seen_v.begin(), seen_v.end());
      std::sort(br.edges.begin(), br.edges.end());
      br.diam = branch_diameter(br, x);
      br.lowest_vertex = -1;
      for (int v : br.vertices)
        if (v != x && (br.lowest_vertex < 0 || v < br.lowest_vertex)) br.lowest_vertex = v;
      out.push_back(std::move(br));
    }
    return out;
  }

  MLen branch_diameter(const Branch& br, int x) {
    if (tree_.mode() == MetricMode::EuclideanEmbedded) {
      Rational best(0);
      for (std::size_t i = 0; i < br.vertices.size(); ++i)
        for (std::size_t j = i + 1; j < br.vertices.size(); ++j)
          best = std::max(best, tree_.dist_sq(br.vertices[i], br.vertices[j]));
      return MLen::from_sq(best);
    }
    std::set<int> allowed(br.edges.begin(), br.edges.end());
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
    auto [u, du] = far_from(x);
    (void)du;
    auto [v, dv] = far_from(u);
    (void)v;
    return MLen::from_value(dv);
  }

  int branch_containing(const std::vector<Branch>& branches, int vertex, int x) {
    for (std::size_t b = 0; b < branches.size(); ++b)
      if (vertex != x &&
          std::binary_search(branches[b].vertices.begin(), branches[b].vertices.end(), vertex))
        return static_cast<int>(b);
    fail(Errc::InvalidPoint, "mark not found in any branch");
  }

  int pick_split(const Component& c, const std::set<int>& edgeset,
                 const std::vector<int>& candidates) {
    int best = -1;
    MLen best_diam;
    for (int cand : candidates) {
      auto branches = branches_at(c, edgeset, cand);
      MLen worst;
      for (const auto& br : branches)
        if (worst < br.diam) worst = br.diam;
      if (best < 0 || worst < best_diam || (worst == best_diam && cand < best)) {
        best = cand;
        best_diam = worst;
      }
    }
    if (best < 0) fail(Errc::InvalidInput, "no admissible split vertex");
    return best;
  }

  const SimplicialMetricTree& tree_;
  const Decomposition& decomp_;
};

void validate_marked(const MarkedTree& marked, const Decomposition& decomp) {
  const SimplicialMetricTree& t = *marked.tree;
  for (int v = 0; v < t.vertex_count(); ++v)
    if (t.degree(v) > 3)
      fail(Errc::NotTrivalent, "vertex " + std::to_string(t.user_id(v)) + " has degree " +
                                   std::to_string(t.degree(v)));
  for (int v : decomp.cuts)
    if (t.degree(v) != 3)
      fail(Errc::NotTrivalent, "cut vertex " + std::to_string(t.user_id(v)) +
                                   " is not a triple point");
  for (const Tile& x : decomp.tiles)
    if (x.boundary.size() > 2)
      fail(Errc::NotEdgeLike, "tile " + std::to_string(x.id) + " has " +
                                  std::to_string(x.boundary.size()) + " boundary points");
  std::vector<int> mark_tiles;
  for (std::optional<int> m : {marked.mark_minus, marked.mark_plus}) {
    if (!m) continue;
    if (!t.is_leaf(*m))
      fail(Errc::MarkNotInLeafTile, "mark " + std::to_string(t.user_id(*m)) + " is not a leaf");
    if (decomp.cuts.empty()) continue;
    int incident = t.neighbors(*m).front().first;
    int tile = decomp.tile_of_edge[incident];
    if (decomp.tiles[tile].boundary.size() != 1)
      fail(Errc::MarkNotInLeafTile,
           "mark " + std::to_string(t.user_id(*m)) + " does not lie in a leaf-tile");
    mark_tiles.push_back(tile);
  }
  if (mark_tiles.size() == 2 && mark_tiles[0] == mark_tiles[1])
    fail(Errc::MarkNotInLeafTile, "both marks lie in the same leaf-tile");
  if (marked.mark_minus && marked.mark_plus && *marked.mark_minus == *marked.mark_plus)
    fail(Errc::InvalidInput, "marks must be distinct leaves");
}

}  // namespace

TileHomeoResult build_tile_homeo(const MarkedTree& marked, const Decomposition& decomp) {
  if (!marked.tree) fail(Errc::InvalidInput, "marked tree missing");
  validate_marked(marked, decomp);
  const SimplicialMetricTree& t = *marked.tree;

  Component root;
  root.edges.resize(t.edge_count());
  for (int e = 0; e < t.edge_count(); ++e) root.edges[e] = e;
  root.cuts = decomp.cuts;
  root.mark_minus = marked.mark_minus;
  root.mark_plus = marked.mark_plus;

  TileHomeoResult out;
  out.tile_words.assign(decomp.tiles.size(), Word());
  HomeoBuilder builder(t, decomp);
  builder.build(root, Word(), out);
  return out;
}

TileHomeomorphism refine_homeo(const SimplicialMetricTree& tree, const SubdivisionSequence& seq,
                               const DecompositionProperties& report) {
  if (!report.pass)
    fail(Errc::PreconditionNotVerified,
         "subdivision properties must pass before refining the homeomorphism");
  TileHomeomorphism homeo;
  // level 0: the whole tree onto the root tile
  TileHomeoLevel level0;
  level0.tile_words.assign(seq.levels[0].decomp.tiles.size(), Word());
  homeo.levels.push_back(std::move(level0));

  for (int n = 0; n < seq.n_max; ++n) {
    const Decomposition& coarse = seq.levels[n].decomp;
    const Decomposition& fine = seq.levels[n + 1].decomp;
    const TileHomeoLevel& prev = homeo.levels.back();

    TileHomeoLevel next;
    next.tile_words.assign(fine.tiles.size(), Word());
    next.vertex_words = prev.vertex_words;

    std::set<int> fine_cuts(fine.cuts.begin(), fine.cuts.end());

    for (const Tile& X : coarse.tiles) {
      const Word& w = prev.tile_words[X.id];
      TileInfo winfo = tile_info(w);
      std::set<int> boundary(X.boundary.begin(), X.boundary.end());
      std::vector<int> vx;  // V_X = V^{n+1} on the interior of X
      for (int v : X.vertices)
        if (fine_cuts.count(v) && !boundary.count(v)) vx.push_back(v);
      std::vector<const Tile*> inside;
      for (const Tile& Y : fine.tiles)
        if (coarse.tile_of_edge[Y.edges.front()] == X.id) inside.push_back(&Y);

      MarkedTree marked;
      marked.tree = &tree;
      marked.cuts = vx;
      if (X.boundary.size() == 1) {
        int p = X.boundary[0];
        if (winfo.boundary.size() != 1)
          fail(Errc::PreconditionNotVerified, "image tile boundary mismatch on a leaf-tile");
        if (winfo.minus_is_boundary)
          marked.mark_minus = p;
        else
          marked.mark_plus = p;
      } else if (X.boundary.size() == 2) {
        if (winfo.boundary.size() != 2)
          fail(Errc::PreconditionNotVerified, "image tile boundary mismatch on an edge-tile");
        int p = X.boundary[0], q = X.boundary[1];
        DyadicPoint image_p = apply_word(prev.vertex_words.at(p), DyadicPoint::integer(0, 0));
        DyadicPoint minus = apply_word(w, DyadicPoint::integer(-1, 0));
        DyadicPoint plus = apply_word(w, DyadicPoint::integer(1, 0));
        if (image_p == minus) {
          marked.mark_minus = p;
          marked.mark_plus = q;
        } else if (image_p == plus) {
          marked.mark_minus = q;
          marked.mark_plus = p;
        } else {
          fail(Errc::PreconditionNotVerified, "boundary vertex image does not match the tile");
        }
        (void)plus;
      }

      // run the single-level construction inside X and prefix with w
      Component root;
      root.edges = X.edges;
      root.cuts = vx;
      root.mark_minus = marked.mark_minus;
      root.mark_plus = marked.mark_plus;
      TileHomeoResult local_result;
      local_result.tile_words.assign(fine.tiles.size(), Word());
      HomeoBuilder builder(tree, fine);
      builder.build(root, Word(), local_result);
      for (const Tile* Y : inside)
        next.tile_words[Y->id] = w.concat(local_result.tile_words[Y->id]);
      for (const auto& [v, u] : local_result.vertex_words) next.vertex_words[v] = w.concat(u);
    }
    homeo.levels.push_back(std::move(next));
  }
  return homeo;
}

IsoReport verify_isomorphism(const SimplicialMetricTree& tree, const SubdivisionSequence& seq,
                             const TileHomeomorphism& homeo) {
  IsoReport rep;
  rep.pass = true;
  auto fail_with = [&](int level, const std::string& what) {
    rep.pass = false;
    if (rep.failures.size() < 32) rep.failures.push_back({level, what});
  };
  int L = static_cast<int>(homeo.levels.size()) - 1;
  rep.levels_checked = L + 1;

  for (int n = 0; n <= L; ++n) {
    const Decomposition& d = seq.levels[n].decomp;
    const TileHomeoLevel& lev = homeo.levels[n];
    if (lev.tile_words.size() != d.tiles.size()) {
      fail_with(n, "tile/word count mismatch");
      continue;
    }
    // injectivity
    std::set<Word> seen;
    for (const Word& w : lev.tile_words)
      if (!seen.insert(w).second) fail_with(n, "duplicate image word " + w.str());

    // incidence equivalence (exact on both sides)
    for (std::size_t i = 0; i < d.tiles.size(); ++i)
      for (std::size_t j = i + 1; j < d.tiles.size(); ++j) {
        const auto& a = d.tiles[i].vertices;
        const auto& b = d.tiles[j].vertices;
        bool tree_touch = false;
        std::size_t ii = 0, jj = 0;
        while (ii < a.size() && jj < b.size()) {
          if (a[ii] == b[jj]) {
            tree_touch = true;
            break;
          }
          if (a[ii] < b[jj])
            ++ii;
          else
            ++jj;
        }
        bool word_touch = tiles_intersect(lev.tile_words[i], lev.tile_words[j]);
        if (tree_touch != word_touch)
          fail_with(n, "incidence mismatch " + lev.tile_words[i].str() + " vs " +
                           lev.tile_words[j].str());
      }

    // vertex images sit on the boundaries of their tiles' images
    for (const Tile& X : d.tiles) {
      TileInfo info = tile_info(lev.tile_words[X.id]);
      if (info.boundary.size() != X.boundary.size())
        fail_with(n, "boundary count mismatch on word " + lev.tile_words[X.id].str());
      for (int v : X.boundary) {
        auto it = lev.vertex_words.find(v);
        if (it == lev.vertex_words.end()) {
          fail_with(n, "missing vertex image for " + std::to_string(tree.user_id(v)));
          continue;
        }
        DyadicPoint p = apply_word(it->second, DyadicPoint::integer(0, 0));
        bool on_boundary = false;
        for (const auto& b : info.boundary) on_boundary = on_boundary || (b == p);
        if (!on_boundary)
          fail_with(n, "vertex image off the tile boundary: v=" +
                           std::to_string(tree.user_id(v)) + " word=" + it->second.str());
      }
    }

    // cut-replay oracle: cutting the CSST at the images of V^n reproduces
    // exactly the image tiles
    std::vector<Word> cut_words;
    for (int v : seq.levels[n].cut_vertices) {
      auto it = lev.vertex_words.find(v);
      if (it != lev.vertex_words.end()) cut_words.push_back(it->second);
    }
    if (cut_words.size() == seq.levels[n].cut_vertices.size()) {
      auto replay = csst_decompose(cut_words);
      std::vector<Word> replay_words;
      bool word_addressed = true;
      for (const auto& tile : replay) {
        if (tile.words.size() != 1) {
          word_addressed = false;
          break;
        }
        replay_words.push_back(tile.words.front());
      }
      std::vector<Word> image_words = lev.tile_words;
      std::sort(image_words.begin(), image_words.end());
      std::sort(replay_words.begin(), replay_words.end());
      if (!word_addressed || replay_words != image_words)
        fail_with(n, "cut replay does not reproduce the image tiles");
    } else {
      fail_with(n, "vertex image map incomplete");
    }

    if (n == L) break;
    const Decomposition& fine = seq.levels[n + 1].decomp;
    const TileHomeoLevel& flev = homeo.levels[n + 1];

    // containment equivalence both ways + properties (B), (C), (D)
    std::set<int> fine_cuts(fine.cuts.begin(), fine.cuts.end());
    std::vector<std::vector<Word>> children(d.tiles.size());
    // #V_X per coarse tile, the per-tile bound of property (C)
    std::vector<std::size_t> interior_cuts(d.tiles.size(), 0);
    for (const Tile& X : d.tiles) {
      std::set<int> boundary(X.boundary.begin(), X.boundary.end());
      for (int v : X.vertices)
        if (fine_cuts.count(v) && !boundary.count(v)) ++interior_cuts[X.id];
    }
    for (const Tile& Y : fine.tiles) {
      int parent = d.tile_of_edge[Y.edges.front()];
      children[parent].push_back(flev.tile_words[Y.id]);
      const Word& wx = lev.tile_words[parent];
      const Word& wy = flev.tile_words[Y.id];
      if (!wx.is_prefix_of(wy)) fail_with(n + 1, "child image not inside parent image");
      std::size_t inc = wy.length() - std::min(wy.length(), wx.length());
      rep.max_level_increment = std::max(rep.max_level_increment, inc);
      if (inc < 1) fail_with(n + 1, "image level fails to increase");
      if (inc > interior_cuts[parent])
        fail_with(n + 1, "image level increment " + std::to_string(inc) +
                             " exceeds the interior cut count " +
                             std::to_string(interior_cuts[parent]));
      // (D): children touching the parent boundary land exactly two levels deeper
      bool touches_boundary = false;
      for (int b : d.tiles[parent].boundary)
        if (std::binary_search(Y.vertices.begin(), Y.vertices.end(), b)) touches_boundary = true;
      if (touches_boundary && inc != 2)
        fail_with(n + 1, "boundary child " + wy.str() + " has level increment " +
                             std::to_string(inc));
      // containment must fail against every other coarse image
      for (const Tile& X2 : d.tiles) {
        if (X2.id == parent) continue;
        if (lev.tile_words[X2.id].is_prefix_of(wy))
          fail_with(n + 1, "child image contained in a non-parent image");
      }
    }
    // (B): the children exactly fill each parent's image tile
    for (const Tile& X : d.tiles)
      if (!words_cover_tile(children[X.id], lev.tile_words[X.id]))
        fail_with(n, "children do not cover the parent image " + lev.tile_words[X.id].str());
  }
  return rep;
}

EvalResult evaluate(const SimplicialMetricTree& tree, const SubdivisionSequence& seq,
                    const TileHomeomorphism& homeo, const TreePoint& x, int depth) {
  if (depth < 0 || depth >= static_cast<int>(homeo.levels.size()))
    fail(Errc::DepthExceeded, "depth " + std::to_string(depth) + " beyond built levels");
  tree.check_point(x);
  int current = 0;  // level-0 tile
  for (int n = 1; n <= depth; ++n) {
    const Decomposition& coarse = seq.levels[n - 1].decomp;
    const Decomposition& fine = seq.levels[n].decomp;
    int chosen = -1;
    if (!x.is_vertex()) {
      chosen = fine.tile_of_edge[x.edge];
      if (coarse.tile_of_edge[fine.tiles[chosen].edges.front()] != current)
        fail(Errc::InvalidPoint, "internal: descending chain broken");
    } else {
      for (const Tile& Y : fine.tiles) {
        if (coarse.tile_of_edge[Y.edges.front()] != current) continue;
        if (std::binary_search(Y.vertices.begin(), Y.vertices.end(), x.vertex)) {
          chosen = Y.id;
          break;  // tiles are ordered by id: lowest id wins
        }
      }
    }
    if (chosen < 0) fail(Errc::InvalidPoint, "point escaped the tile chain");
    current = chosen;
  }
  EvalResult out;
  out.word = homeo.levels[depth].tile_words[current];
  out.value = apply_word(out.word, DyadicPoint::integer(0, 0));
  Rational d = pow2(1 - static_cast<long>(out.word.length()));
  out.error_sq = d * d;
  return out;
}

WordCover image_cover(const TileHomeomorphism& homeo) {
  std::vector<std::vector<Word>> levels;
  for (const auto& lev : homeo.levels) levels.push_back(lev.tile_words);
  return WordCover(std::move(levels));
}

EndToEndResult end_to_end(const SimplicialMetricTree& tree, const std::vector<Rational>& grid,
                          int n_max, std::size_t triple_budget, std::uint64_t seed) {
  CalibrationResult cal = calibrate_delta(tree, n_max, grid);
  EndToEndResult out;
  out.delta = cal.delta;
  out.sequence = std::move(cal.sequence);
  out.properties = std::move(cal.report);
  out.homeo = refine_homeo(tree, out.sequence, out.properties);
  out.isomorphism = verify_isomorphism(tree, out.sequence, out.homeo);

  WordCover cover = image_cover(out.homeo);
  out.image_qv = check_quasivisual(cover, n_max);

  // distortion between the tree metric and the pulled-back Euclidean metric
  const auto& vmap = out.homeo.levels.back().vertex_words;
  std::vector<int> vertices;
  std::vector<DyadicPoint> images;
  for (const auto& [v, u] : vmap) {
    vertices.push_back(v);
    images.push_back(apply_word(u, DyadicPoint::integer(0, 0)));
  }
  if (vertices.size() >= 3) {
    MetricPair mp;
    mp.n = vertices.size();
    mp.d1_sq = [&tree, &vertices](std::size_t i, std::size_t j) {
      return tree.dist_sq(vertices[i], vertices[j]);
    };
    mp.d2_sq = [&images](std::size_t i, std::size_t j) {
      return euclidean_dist_sq(images[i], images[j]);
    };
    out.distortion = fit_distortion(mp, triple_budget, seed);
  }
  out.pass = out.properties.pass && out.isomorphism.pass && out.image_qv.pass;
  return out;
}

}  // namespace csst
