#include "csst/csst.hpp"

#include "csst/errors.hpp"
#include "csst/util.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <set>

namespace csst {

namespace {

std::size_t count_words_up_to(int maxlen) {
  // (3^{maxlen+1} - 1) / 2
  std::size_t c = 0, p = 1;
  for (int l = 0; l <= maxlen; ++l) {
    c += p;
    p *= 3;
  }
  return c;
}

}  // namespace

TileInfo tile_info(const Word& w) {
  TileInfo info;
  info.word = w;
  info.diam = pow2(1 - static_cast<long>(w.length()));
  info.center = apply_word(w, DyadicPoint::integer(0, 0));
  bool bminus = false, bplus = false;
  for (std::size_t i = 0; i < w.length(); ++i) {
    int k = w.letter(i);
    bool nminus = (k == 1) ? bminus : true;
    bool nplus = (k == 1) ? true : (k == 2 ? bplus : false);
    bminus = nminus;
    bplus = nplus;
  }
  info.minus_is_boundary = bminus;
  info.plus_is_boundary = bplus;
  if (bminus) info.boundary.push_back(apply_word(w, DyadicPoint::integer(-1, 0)));
  if (bplus) info.boundary.push_back(apply_word(w, DyadicPoint::integer(1, 0)));
  std::sort(info.boundary.begin(), info.boundary.end());
  return info;
}

std::vector<BranchVertex> branch_vertices(int n, const WordBudget& budget) {
  if (n < 1) fail(Errc::InvalidInput, "branch_vertices requires n >= 1");
  if (count_words_up_to(n - 1) > budget.max_words)
    fail(Errc::BudgetExceeded, "word budget exceeded at n=" + std::to_string(n));
  std::vector<BranchVertex> out;
  for (const Word& u : words_up_to_length(static_cast<std::size_t>(n - 1)))
    out.push_back({u, apply_word(u, DyadicPoint::integer(0, 0)),
                   pow2(-static_cast<long>(u.length()))});
  return out;
}

DyadicPoint Anchor::point() const {
  switch (base) {
    case -1: return apply_word(word, DyadicPoint::integer(-1, 0));
    case 0: return apply_word(word, DyadicPoint::integer(0, 0));
    case 1: return apply_word(word, DyadicPoint::integer(1, 0));
    default: fail(Errc::InvalidInput, "anchor base must be -1, 0 or 1");
  }
}

namespace {

Anchor canonical_anchor(Anchor a) {
  // g_{u1}(-1) = g_u(-1), g_{u2}(1) = g_u(1),
  // g_{u1}(1) = g_{u2}(-1) = g_{u3}(-1) = g_u(0)
  for (;;) {
    if (a.base == 0 || a.word.empty()) return a;
    int last = a.word.last();
    if (a.base == -1 && last == 1) {
      a.word = a.word.parent();
    } else if (a.base == 1 && last == 2) {
      a.word = a.word.parent();
    } else if ((a.base == -1 && (last == 2 || last == 3)) || (a.base == 1 && last == 1)) {
      a.word = a.word.parent();
      a.base = 0;
    } else {
      return a;  // (u3, +1) = g_u(i)
    }
  }
}

Rational geodesic_anchor_rec(Anchor a, Anchor b) {
  a = canonical_anchor(a);
  b = canonical_anchor(b);
  if (a.word == b.word && a.base == b.base) return Rational(0);

  std::size_t cp = Word::common_prefix_len(a.word, b.word);
  if (cp > 0)
    return pow2(-static_cast<long>(cp)) *
           geodesic_anchor_rec({a.word.suffix(cp), a.base}, {b.word.suffix(cp), b.base});

  if (a.word.empty() && b.word.empty()) {
    // bases differ: rho(0, +-1) = 1, rho(-1, 1) = 2
    return Rational(std::abs(a.base - b.base));
  }
  auto zero_to = [&](const Anchor& x) -> Rational {
    // rho(0, g_{k w'}(x.base)) = rho(q_k, g_{w'}(x.base)) / 2 with
    // q_1 = 1, q_2 = q_3 = -1
    int k = x.word.first();
    int qk = (k == 1) ? 1 : -1;
    return geodesic_anchor_rec({Word(), qk}, {x.word.suffix(1), x.base}) / 2;
  };
  if (a.word.empty() || b.word.empty()) {
    const Anchor& e = a.word.empty() ? a : b;
    const Anchor& f = a.word.empty() ? b : a;
    if (e.base == 0) return zero_to(f);
    // the leaf -1 lives in T_1, the leaf +1 in T_2
    int home = (e.base == -1) ? 1 : 2;
    if (f.word.first() == home)
      return geodesic_anchor_rec(e, {f.word.suffix(1), f.base}) / 2;
    return Rational(1) + zero_to(f);
  }
  // distinct first letters: the arc passes through 0
  return zero_to(a) + zero_to(b);
}

}  // namespace

Rational geodesic_distance(const Anchor& x, const Anchor& y) {
  return geodesic_anchor_rec(x, y);
}

Rational geodesic_distance(const Word& v, const Word& w) {
  return geodesic_anchor_rec(Anchor::vertex(v), Anchor::vertex(w));
}

namespace {

const Box& root_box() {
  static const Box b{Rational(-1), Rational(1), Rational(-1, 2), Rational(1)};
  return b;
}

bool in_box(const DyadicPoint& z, const Box& b) {
  Rational x = z.re(), y = z.im();
  return x >= b.xlo && x <= b.xhi && y >= b.ylo && y <= b.yhi;
}

DyadicPoint double_point(const DyadicPoint& z) {
  if (z.k > 0) return DyadicPoint(z.a, z.b, z.k - 1);
  return DyadicPoint(z.a * 2, z.b * 2, 0);
}

DyadicPoint inv_apply(int letter, const DyadicPoint& z) {
  DyadicPoint d = double_point(z);  // 2z
  const Int unit = Int(1) << d.k;
  switch (letter) {
    case 1: return DyadicPoint(d.a + unit, d.b, d.k);       // 2z + 1
    case 2: return DyadicPoint(d.a - unit, -d.b, d.k);      // conj(2z - 1)
    case 3: {
      // 2i*conj(z) - 1
      DyadicPoint r(d.b - unit, d.a, d.k);
      return r;
    }
    default: fail(Errc::InvalidInput, "IFS letter out of {1,2,3}");
  }
}

bool point_in_csst_impl(const DyadicPoint& z,
                        std::map<DyadicPoint, bool>& memo) {
  if (!in_box(z, root_box())) return false;
  if (z.k == 0)
    return z == DyadicPoint::integer(-1, 0) || z == DyadicPoint::integer(0, 0) ||
           z == DyadicPoint::integer(1, 0) || z == DyadicPoint::integer(0, 1);
  auto it = memo.find(z);
  if (it != memo.end()) return it->second;
  bool in = false;
  for (int k = 1; k <= 3 && !in; ++k) in = point_in_csst_impl(inv_apply(k, z), memo);
  memo.emplace(z, in);
  return in;
}

std::map<DyadicPoint, bool>& membership_memo() {
  static std::map<DyadicPoint, bool> memo;
  return memo;
}
std::mutex membership_mutex;

}  // namespace

bool point_in_csst(const DyadicPoint& z) {
  std::lock_guard<std::mutex> lock(membership_mutex);
  return point_in_csst_impl(z, membership_memo());
}

bool point_in_tile(const Word& w, const DyadicPoint& z) {
  DyadicPoint cur = z;
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (!in_box(cur, root_box())) return false;
    cur = inv_apply(w.letter(i), cur);
  }
  return point_in_csst(cur);
}

bool tile_contains_zero(const Word& w) {
  if (w.empty()) return true;
  int first = w.first();
  int rest = (first == 1) ? 2 : 1;
  for (std::size_t i = 1; i < w.length(); ++i)
    if (w.letter(i) != rest) return false;
  return true;
}

bool tiles_intersect(const Word& a, const Word& b) {
  if (a.is_prefix_of(b) || b.is_prefix_of(a)) return true;
  std::size_t cp = Word::common_prefix_len(a, b);
  return tile_contains_zero(a.suffix(cp)) && tile_contains_zero(b.suffix(cp));
}

Box tile_bbox(const Word& w) {
  Box b = root_box();
  for (std::size_t i = w.length(); i-- > 0;) {
    Box n;
    switch (w.letter(i)) {
      case 1:
        n = {b.xlo / 2 - Rational(1, 2), b.xhi / 2 - Rational(1, 2), b.ylo / 2, b.yhi / 2};
        break;
      case 2:
        n = {b.xlo / 2 + Rational(1, 2), b.xhi / 2 + Rational(1, 2), -b.yhi / 2, -b.ylo / 2};
        break;
      case 3:
        n = {b.ylo / 2, b.yhi / 2, (b.xlo + 1) / 2, (b.xhi + 1) / 2};
        break;
    }
    b = n;
  }
  return b;
}

Rational box_gap_sq(const Box& a, const Box& b) {
  Rational dx(0), dy(0);
  if (a.xlo > b.xhi) dx = a.xlo - b.xhi;
  if (b.xlo > a.xhi) dx = b.xlo - a.xhi;
  if (a.ylo > b.yhi) dy = a.ylo - b.yhi;
  if (b.ylo > a.yhi) dy = b.ylo - a.yhi;
  return dx * dx + dy * dy;
}

DistBracket tile_dist_bracket(const Word& a, const Word& b, int sample_depth) {
  auto samples = [&](const Word& w) {
    std::vector<DyadicPoint> pts;
    for (const Word& u : words_up_to_length(static_cast<std::size_t>(sample_depth)))
      pts.push_back(apply_word(w.concat(u), DyadicPoint::integer(0, 0)));
    pts.push_back(apply_word(w, DyadicPoint::integer(-1, 0)));
    pts.push_back(apply_word(w, DyadicPoint::integer(1, 0)));
    pts.push_back(apply_word(w, DyadicPoint::integer(0, 1)));
    return pts;
  };
  auto pa = samples(a), pb = samples(b);
  Rational best(-1);
  for (const auto& x : pa)
    for (const auto& y : pb) {
      Rational d = euclidean_dist_sq(x, y);
      if (best < 0 || d < best) best = d;
    }
  // cover radius of the samples inside each tile
  Rational ha = pow2(1 - static_cast<long>(a.length()) - sample_depth);
  Rational hb = pow2(1 - static_cast<long>(b.length()) - sample_depth);
  auto [mlb, mub] = sqrt_bounds(best);
  (void)mub;
  Rational lo_val = mlb - ha - hb;
  Rational lo_sq = lo_val > 0 ? lo_val * lo_val : Rational(0);
  lo_sq = std::max(lo_sq, box_gap_sq(tile_bbox(a), tile_bbox(b)));
  return {lo_sq, best, false};
}

namespace {

struct SubDecomp {
  std::vector<CsstTile> tiles;
  int idx_minus = -1;  // tile containing the leaf -1
  int idx_plus = -1;   // tile containing the leaf +1
};

void normalize_words(std::vector<Word>& ws) {
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  // collapse complete sibling triples into their parent, to fixpoint
  bool changed = true;
  while (changed) {
    changed = false;
    std::set<Word> s(ws.begin(), ws.end());
    for (const Word& w : ws) {
      if (w.empty()) continue;
      Word p = w.parent();
      if (s.count(p.child(1)) && s.count(p.child(2)) && s.count(p.child(3))) {
        s.erase(p.child(1));
        s.erase(p.child(2));
        s.erase(p.child(3));
        s.insert(p);
        ws.assign(s.begin(), s.end());
        changed = true;
        break;
      }
    }
  }
}

SubDecomp csst_decompose_rec(const std::vector<Word>& cuts) {
  SubDecomp out;
  if (cuts.empty()) {
    out.tiles.push_back({{Word()}, {}});
    out.idx_minus = out.idx_plus = 0;
    return out;
  }
  bool has_root = false;
  std::vector<Word> sub[4];
  for (const Word& c : cuts) {
    if (c.empty())
      has_root = true;
    else
      sub[c.first()].push_back(c.suffix(1));
  }
  SubDecomp parts[4];
  for (int k = 1; k <= 3; ++k) parts[k] = csst_decompose_rec(sub[k]);

  auto prefixed = [&](int k, const CsstTile& t) {
    CsstTile n;
    for (const Word& w : t.words) n.words.push_back(Word(std::string(1, '0' + k)).concat(w));
    for (const Word& w : t.boundary) n.boundary.push_back(Word(std::string(1, '0' + k)).concat(w));
    return n;
  };
  // sub-tile of T_k containing the preimage of 0 (0 = g_1(1) = g_2(-1) = g_3(-1))
  int at_zero[4] = {-1, parts[1].idx_plus, parts[2].idx_minus, parts[3].idx_minus};

  if (has_root) {
    std::vector<int> base(4, 0);
    for (int k = 1; k <= 3; ++k) {
      base[k] = static_cast<int>(out.tiles.size());
      for (const auto& t : parts[k].tiles) out.tiles.push_back(prefixed(k, t));
      out.tiles[base[k] + at_zero[k]].boundary.push_back(Word());
    }
    out.idx_minus = base[1] + parts[1].idx_minus;
    out.idx_plus = base[2] + parts[2].idx_plus;
  } else {
    // glue the three pieces that contain 0 into one tile
    CsstTile glued;
    std::vector<int> base(4, 0);
    int glued_index = 0;
    std::vector<std::vector<int>> remap(4);
    for (int k = 1; k <= 3; ++k) {
      remap[k].assign(parts[k].tiles.size(), -1);
      for (std::size_t i = 0; i < parts[k].tiles.size(); ++i) {
        CsstTile t = prefixed(k, parts[k].tiles[i]);
        if (static_cast<int>(i) == at_zero[k]) {
          glued.words.insert(glued.words.end(), t.words.begin(), t.words.end());
          glued.boundary.insert(glued.boundary.end(), t.boundary.begin(), t.boundary.end());
          remap[k][i] = glued_index;
        }
      }
    }
    out.tiles.push_back(std::move(glued));
    for (int k = 1; k <= 3; ++k) {
      base[k] = static_cast<int>(out.tiles.size());
      for (std::size_t i = 0; i < parts[k].tiles.size(); ++i) {
        if (static_cast<int>(i) == at_zero[k]) continue;
        remap[k][i] = static_cast<int>(out.tiles.size());
        out.tiles.push_back(prefixed(k, parts[k].tiles[i]));
      }
    }
    out.idx_minus = remap[1][parts[1].idx_minus];
    out.idx_plus = remap[2][parts[2].idx_plus];
  }
  for (auto& t : out.tiles) {
    normalize_words(t.words);
    std::sort(t.boundary.begin(), t.boundary.end());
    t.boundary.erase(std::unique(t.boundary.begin(), t.boundary.end()), t.boundary.end());
  }
  return out;
}

}  // namespace

std::vector<CsstTile> csst_decompose(std::vector<Word> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  auto out = csst_decompose_rec(cuts).tiles;
  std::sort(out.begin(), out.end(),
            [](const CsstTile& a, const CsstTile& b) { return a.words < b.words; });
  return out;
}

namespace {

bool suffixes_cover(std::vector<Word> suffixes) {
  if (suffixes.empty()) return false;
  for (const Word& s : suffixes)
    if (s.empty()) return true;
  std::vector<Word> part[4];
  for (const Word& s : suffixes) part[s.first()].push_back(s.suffix(1));
  for (int k = 1; k <= 3; ++k)
    if (!suffixes_cover(std::move(part[k]))) return false;
  return true;
}

}  // namespace

bool words_cover_tile(const std::vector<Word>& words, const Word& base) {
  std::vector<Word> suffixes;
  for (const Word& w : words) {
    if (w.is_prefix_of(base)) return true;  // an ancestor tile covers everything
    if (base.is_prefix_of(w)) suffixes.push_back(w.suffix(base.length()));
  }
  return suffixes_cover(std::move(suffixes));
}

LevelBoundReport level_bound_check(const std::vector<Word>& cuts,
                                   const std::vector<CsstTile>& tiles) {
  LevelBoundReport rep;
  rep.cut_count = cuts.size();
  rep.pass = true;
  for (const auto& t : tiles) {
    if (t.words.size() != 1)
      fail(Errc::NotWordAddressed, "tile is a union of " + std::to_string(t.words.size()) +
                                       " word tiles");
    std::size_t l = t.words.front().length();
    rep.max_level = std::max(rep.max_level, l);
    if (l > cuts.size() || (!cuts.empty() && l < 1)) {
      rep.pass = false;
      if (!rep.witness) {
        rep.witness = t.words.front();
        rep.detail = "level " + std::to_string(l) + " vs #cuts " + std::to_string(cuts.size());
      }
    }
  }
  return rep;
}

JnModel build_jn(int n, const WordBudget& budget, MetricMode mode) {
  if (n < 0) fail(Errc::InvalidInput, "build_jn requires n >= 0");
  if (count_words_up_to(n) > budget.max_words)
    fail(Errc::BudgetExceeded, "word budget exceeded for J_" + std::to_string(n));

  std::map<DyadicPoint, int> id_of;
  std::vector<DyadicPoint> pts;
  auto vid = [&](const DyadicPoint& p) {
    auto [it, fresh] = id_of.try_emplace(p, static_cast<int>(pts.size()));
    if (fresh) pts.push_back(p);
    return it->second;
  };
  std::vector<EdgeData> edges;
  Rational half = pow2(-static_cast<long>(n));
  for (const Word& w : words_of_length(static_cast<std::size_t>(n))) {
    int a = vid(apply_word(w, DyadicPoint::integer(-1, 0)));
    int m = vid(apply_word(w, DyadicPoint::integer(0, 0)));
    int c = vid(apply_word(w, DyadicPoint::integer(1, 0)));
    edges.push_back({a, m, half});
    edges.push_back({m, c, half});
  }
  std::vector<VertexData> verts(pts.size());
  std::vector<std::optional<Word>> word_of(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    verts[i].id = static_cast<int>(i);
    verts[i].pos = {pts[i].re(), pts[i].im()};
  }
  if (n >= 1)
    for (const Word& u : words_up_to_length(static_cast<std::size_t>(n - 1))) {
      DyadicPoint p = apply_word(u, DyadicPoint::integer(0, 0));
      auto it = id_of.find(p);
      if (it == id_of.end()) fail(Errc::InvalidInput, "internal: branch vertex missing from J_n");
      verts[it->second].label = "bp:" + u.str();
      word_of[it->second] = u;
    }
  JnModel model{n, SimplicialMetricTree(std::move(verts), std::move(edges), mode), {}, {}};
  model.word_of_vertex.assign(model.tree.vertex_count(), std::nullopt);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (word_of[i]) {
      int idx = model.tree.index_of_id(static_cast<int>(i));
      model.word_of_vertex[idx] = word_of[i];
      model.vertex_of_word[*word_of[i]] = idx;
    }
  }
  return model;
}

SeparationReport euclidean_separation(int level_bound, int jobs) {
  auto pts = branch_vertices(level_bound + 1);
  std::size_t n = pts.size();
  SeparationReport rep;
  rep.level_bound = level_bound;
  std::mutex mu;
  Rational global_best(-1);
  Word wa, wb;
  parallel_chunks(n, jobs, [&](int, std::size_t b, std::size_t e) {
    Rational best(-1);
    Word la, lb;
    for (std::size_t i = b; i < e; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational m = std::min(pts[i].height, pts[j].height);
        Rational r = euclidean_dist_sq(pts[i].point, pts[j].point) / (m * m);
        if (best < 0 || r < best) {
          best = r;
          la = pts[i].word;
          lb = pts[j].word;
        }
      }
    std::lock_guard<std::mutex> lock(mu);
    if (best >= 0 && (global_best < 0 || best < global_best)) {
      global_best = best;
      wa = la;
      wb = lb;
    }
  });
  rep.min_ratio_sq = global_best;
  rep.witness_a = wa;
  rep.witness_b = wb;
  return rep;
}

CsstMetrics quasi_convexity(int level_bound, int jobs) {
  auto pts = branch_vertices(level_bound + 1);
  std::size_t n = pts.size();
  CsstMetrics m;
  m.level_bound = level_bound;
  std::mutex mu;
  bool all_ge_one = true;
  Rational sweep_best(0);
  Word sa, sb;
  parallel_chunks(n, jobs, [&](int, std::size_t b, std::size_t e) {
    bool ge_one = true;
    Rational best(0);
    Word la, lb;
    for (std::size_t i = b; i < e; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        Rational rho = geodesic_distance(pts[i].word, pts[j].word);
        Rational d2 = euclidean_dist_sq(pts[i].point, pts[j].point);
        Rational ratio = rho * rho / d2;
        if (ratio < 1) ge_one = false;
        if (ratio > best) {
          best = ratio;
          la = pts[i].word;
          lb = pts[j].word;
        }
      }
    std::lock_guard<std::mutex> lock(mu);
    all_ge_one = all_ge_one && ge_one;
    if (best > sweep_best) {
      sweep_best = best;
      sa = la;
      sb = lb;
    }
  });
  m.all_ratios_at_least_one = all_ge_one;
  m.sweep_max_ratio_sq = sweep_best;
  m.sweep_witness_a = sa;
  m.sweep_witness_b = sb;

  // scale-invariant adjacency family: parent-child and sibling pairs
  Rational adj_best(0);
  for (const Word& u : words_up_to_length(static_cast<std::size_t>(level_bound))) {
    DyadicPoint pu = apply_word(u, DyadicPoint::integer(0, 0));
    std::vector<Word> kids;
    if (u.length() + 1 <= static_cast<std::size_t>(level_bound))
      for (int k = 1; k <= 3; ++k) kids.push_back(u.child(k));
    for (const Word& c : kids) {
      Rational rho = geodesic_distance(u, c);
      Rational d2 = euclidean_dist_sq(pu, apply_word(c, DyadicPoint::integer(0, 0)));
      Rational ratio = rho * rho / d2;
      if (ratio > adj_best) {
        adj_best = ratio;
        m.adjacent_witness_a = u;
        m.adjacent_witness_b = c;
      }
    }
    for (std::size_t i = 0; i < kids.size(); ++i)
      for (std::size_t j = i + 1; j < kids.size(); ++j) {
        Rational rho = geodesic_distance(kids[i], kids[j]);
        Rational d2 = euclidean_dist_sq(apply_word(kids[i], DyadicPoint::integer(0, 0)),
                                        apply_word(kids[j], DyadicPoint::integer(0, 0)));
        Rational ratio = rho * rho / d2;
        if (ratio > adj_best) {
          adj_best = ratio;
          m.adjacent_witness_a = kids[i];
          m.adjacent_witness_b = kids[j];
        }
      }
  }
  m.adjacent_max_ratio_sq = adj_best;
  return m;
}

}  // namespace csst
