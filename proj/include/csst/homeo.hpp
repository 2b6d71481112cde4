#pragma once

#include "csst/csst.hpp"
#include "csst/quasivisual.hpp"
#include "csst/subdivision.hpp"
#include "csst/tree.hpp"
#include "csst/tree_ops.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace csst {

/// A tree with an edge-like decomposition and up to two marked leaves; the
/// marks pin the normalization F(mark_minus) = -1, F(mark_plus) = +1.
struct MarkedTree {
  const SimplicialMetricTree* tree = nullptr;
  std::vector<int> cuts;
  std::optional<int> mark_minus;
  std::optional<int> mark_plus;
};

struct TileHomeoResult {
  std::vector<Word> tile_words;      // indexed by tile id of the decomposition
  std::map<int, Word> vertex_words;  // cut vertex -> u with F(vertex) = g_u(0)
};

/// Single-level tile-homeomorphism onto word tiles of the CSST. The split
/// vertex at each step minimizes the maximum branch diameter (ties by lowest
/// vertex id); branches containing marks take the letters forced by the
/// normalization, the rest are lettered by decreasing diameter.
TileHomeoResult build_tile_homeo(const MarkedTree& marked, const Decomposition& decomp);

struct TileHomeoLevel {
  std::vector<Word> tile_words;
  std::map<int, Word> vertex_words;
};

struct TileHomeomorphism {
  std::vector<TileHomeoLevel> levels;
};

/// Level-by-level refinement along a verified subdivision sequence; requires
/// the properties report to pass (PreconditionNotVerified otherwise).
TileHomeomorphism refine_homeo(const SimplicialMetricTree& tree, const SubdivisionSequence& seq,
                               const DecompositionProperties& report);

struct IsoFailure {
  int level = 0;
  std::string what;
};

struct IsoReport {
  bool pass = false;
  int levels_checked = 0;
  std::size_t max_level_increment = 0;  // max l(F(Y)) - l(F(X)) over parent/child
  std::vector<IsoFailure> failures;
};

/// Exhaustive per-level verification: word bijectivity, incidence
/// equivalence, containment equivalence, the subdivision conditions for the
/// image family, and the cut-replay oracle on the CSST side.
IsoReport verify_isomorphism(const SimplicialMetricTree& tree, const SubdivisionSequence& seq,
                             const TileHomeomorphism& homeo);

struct EvalResult {
  Word word;           // image tile at the requested depth
  DyadicPoint value;   // g_w(0)
  Rational error_sq;   // (2^{1-l(w)})^2
};

/// Evaluates the limiting map at a tree point to the requested depth by
/// following the descending tile chain (ties by lowest tile id).
EvalResult evaluate(const SimplicialMetricTree& tree, const SubdivisionSequence& seq,
                    const TileHomeomorphism& homeo, const TreePoint& x, int depth);

struct EndToEndResult {
  Rational delta{0};
  SubdivisionSequence sequence;
  DecompositionProperties properties;
  TileHomeomorphism homeo;
  IsoReport isomorphism;
  QvReport image_qv;
  DistortionFit distortion;
  bool pass = false;
};

EndToEndResult end_to_end(const SimplicialMetricTree& tree, const std::vector<Rational>& grid,
                          int n_max, std::size_t triple_budget, std::uint64_t seed);

/// Image words of each level as a cover of the CSST.
WordCover image_cover(const TileHomeomorphism& homeo);

}  // namespace csst
