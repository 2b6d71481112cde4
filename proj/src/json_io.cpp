#include "csst/json_io.hpp"

#include "csst/errors.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace csst {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int expect_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(Errc::Schema, path + ": expected an integer");
  return j.get<int>();
}

std::string expect_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(Errc::Schema, path + ": expected a string");
  return j.get<std::string>();
}

}  // namespace

const Json& require_field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) fail(Errc::Schema, path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(Errc::Schema, path + "/" + key + ": missing");
  return *it;
}

void expect_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(Errc::Schema, path + ": expected an array");
}

Json tree_to_json(const SimplicialMetricTree& tree) {
  Json j;
  j["metric"] = tree.mode() == MetricMode::Geodesic ? "geodesic" : "euclidean";
  Json verts = Json::array();
  for (int v = 0; v < tree.vertex_count(); ++v) {
    Json jv;
    jv["id"] = tree.user_id(v);
    if (tree.position(v)) {
      jv["pos"] = Json::array(
          {format_rational(tree.position(v)->first), format_rational(tree.position(v)->second)});
    }
    verts.push_back(std::move(jv));
  }
  j["vertices"] = std::move(verts);
  Json edges = Json::array();
  for (int e = 0; e < tree.edge_count(); ++e) {
    const auto& ed = tree.edge(e);
    Json je;
    je["u"] = tree.user_id(ed.u);
    je["v"] = tree.user_id(ed.v);
    je["len"] = format_rational(ed.len);
    edges.push_back(std::move(je));
  }
  j["edges"] = std::move(edges);
  Json marks = Json::array();
  for (int v : tree.marks()) marks.push_back(tree.user_id(v));
  j["marks"] = std::move(marks);
  return j;
}

SimplicialMetricTree tree_from_json(const Json& j) {
  std::string metric = expect_string(require_field(j, "metric", ""), "/metric");
  MetricMode mode;
  if (metric == "geodesic")
    mode = MetricMode::Geodesic;
  else if (metric == "euclidean")
    mode = MetricMode::EuclideanEmbedded;
  else
    fail(Errc::Schema, "/metric: expected \"geodesic\" or \"euclidean\"");

  const Json& jv = require_field(j, "vertices", "");
  expect_array(jv, "/vertices");
  std::vector<VertexData> vertices;
  for (std::size_t i = 0; i < jv.size(); ++i) {
    std::string path = "/vertices/" + std::to_string(i);
    VertexData v;
    v.id = expect_int(require_field(jv[i], "id", path), path + "/id");
    if (jv[i].contains("pos")) {
      const Json& p = jv[i]["pos"];
      expect_array(p, path + "/pos");
      if (p.size() != 2) fail(Errc::Schema, path + "/pos: expected two coordinates");
      v.pos = {parse_rational(expect_string(p[0], path + "/pos/0")),
               parse_rational(expect_string(p[1], path + "/pos/1"))};
    }
    vertices.push_back(std::move(v));
  }

  const Json& je = require_field(j, "edges", "");
  expect_array(je, "/edges");
  std::vector<EdgeData> edges;
  for (std::size_t i = 0; i < je.size(); ++i) {
    std::string path = "/edges/" + std::to_string(i);
    EdgeData e;
    e.u = expect_int(require_field(je[i], "u", path), path + "/u");
    e.v = expect_int(require_field(je[i], "v", path), path + "/v");
    e.len = parse_rational(expect_string(require_field(je[i], "len", path), path + "/len"));
    edges.push_back(std::move(e));
  }

  std::vector<int> marks;
  if (j.contains("marks")) {
    expect_array(j["marks"], "/marks");
    for (std::size_t i = 0; i < j["marks"].size(); ++i)
      marks.push_back(expect_int(j["marks"][i], "/marks/" + std::to_string(i)));
  }
  return SimplicialMetricTree(std::move(vertices), std::move(edges), mode, std::move(marks));
}

Json subdivision_to_json(const SimplicialMetricTree& tree, const SubdivisionSequence& seq) {
  Json j;
  j["delta"] = format_rational(seq.delta);
  Json levels = Json::array();
  for (const auto& level : seq.levels) {
    Json jl;
    Json vs = Json::array();
    for (int v : level.cut_vertices) vs.push_back(tree.user_id(v));
    jl["V"] = std::move(vs);
    Json tiles = Json::array();
    for (const Tile& t : level.decomp.tiles) {
      Json jt;
      jt["edges"] = t.edges;
      Json bd = Json::array();
      for (int b : t.boundary) bd.push_back(tree.user_id(b));
      jt["boundary"] = std::move(bd);
      tiles.push_back(std::move(jt));
    }
    jl["tiles"] = std::move(tiles);
    levels.push_back(std::move(jl));
  }
  j["levels"] = std::move(levels);
  return j;
}

Json homeo_to_json(const SimplicialMetricTree& tree, const TileHomeomorphism& homeo) {
  Json j;
  Json levels = Json::array();
  for (const auto& level : homeo.levels) {
    Json jl;
    Json tiles = Json::array();
    for (std::size_t t = 0; t < level.tile_words.size(); ++t) {
      Json jt;
      jt["tile_id"] = t;
      jt["word"] = level.tile_words[t].str();
      tiles.push_back(std::move(jt));
    }
    jl["tiles"] = std::move(tiles);
    Json verts = Json::array();
    for (const auto& [v, w] : level.vertex_words) {
      Json jv;
      jv["v"] = tree.user_id(v);
      jv["word_of_g0"] = w.str();
      verts.push_back(std::move(jv));
    }
    jl["vertices"] = std::move(verts);
    levels.push_back(std::move(jl));
  }
  j["levels"] = std::move(levels);
  return j;
}

TileHomeomorphism homeo_from_json(const Json& j) {
  TileHomeomorphism out;
  const Json& levels = require_field(j, "levels", "");
  expect_array(levels, "/levels");
  if (levels.empty()) fail(Errc::Schema, "/levels: must not be empty");
  for (std::size_t n = 0; n < levels.size(); ++n) {
    std::string lpath = "/levels/" + std::to_string(n);
    TileHomeoLevel level;
    const Json& tiles = require_field(levels[n], "tiles", lpath);
    expect_array(tiles, lpath + "/tiles");
    level.tile_words.resize(tiles.size());
    for (std::size_t t = 0; t < tiles.size(); ++t) {
      std::string tpath = lpath + "/tiles/" + std::to_string(t);
      int id = expect_int(require_field(tiles[t], "tile_id", tpath), tpath + "/tile_id");
      if (id < 0 || id >= static_cast<int>(tiles.size()))
        fail(Errc::Schema, tpath + "/tile_id: out of range");
      std::string w = expect_string(require_field(tiles[t], "word", tpath), tpath + "/word");
      try {
        level.tile_words[id] = Word(w);
      } catch (const Error&) {
        fail(Errc::Schema, tpath + "/word: invalid word '" + w + "'");
      }
    }
    const Json& verts = require_field(levels[n], "vertices", lpath);
    expect_array(verts, lpath + "/vertices");
    for (std::size_t i = 0; i < verts.size(); ++i) {
      std::string vpath = lpath + "/vertices/" + std::to_string(i);
      int v = expect_int(require_field(verts[i], "v", vpath), vpath + "/v");
      std::string w =
          expect_string(require_field(verts[i], "word_of_g0", vpath), vpath + "/word_of_g0");
      level.vertex_words[v] = Word(w);
    }
    out.levels.push_back(std::move(level));
  }
  return out;
}

Json tile_list_to_json(const std::vector<Word>& words) {
  Json out = Json::array();
  for (const Word& w : words) {
    TileInfo info = tile_info(w);
    Json jt;
    jt["word"] = w.str();
    jt["diam"] = format_rational(info.diam);
    Json bd = Json::array();
    for (const auto& p : info.boundary)
      bd.push_back(Json::array({format_rational(p.re()), format_rational(p.im())}));
    jt["boundary"] = std::move(bd);
    out.push_back(std::move(jt));
  }
  return out;
}

namespace {

Json level_constants_to_json(const std::vector<LevelConstant>& cs) {
  Json out = Json::array();
  for (const auto& c : cs) {
    Json jc;
    jc["level"] = c.level;
    jc["value"] = fmt_double(c.value);
    if (c.value_sq >= 0) jc["value_sq"] = format_rational(c.value_sq);
    jc["certified"] = c.certified;
    if (!c.witness.empty()) jc["witness"] = c.witness;
    out.push_back(std::move(jc));
  }
  return out;
}

}  // namespace

Json qv_report_to_json(const QvReport& rep) {
  Json j;
  j["pass"] = rep.pass;
  j["max_level"] = rep.max_level;
  j["same_level_diam"] = {{"pass", rep.same_level_diam.pass},
                          {"per_level", level_constants_to_json(rep.same_level_diam.per_level)}};
  j["disjoint_dist"] = {{"pass", rep.disjoint_dist.pass},
                        {"per_level", level_constants_to_json(rep.disjoint_dist.per_level)}};
  j["cross_level_diam"] = {{"pass", rep.cross_level_diam.pass},
                           {"per_level", level_constants_to_json(rep.cross_level_diam.per_level)}};
  j["shrink"] = {{"pass", rep.shrink_pass}, {"k0", rep.k0}, {"lambda", fmt_double(rep.lambda)}};
  j["decay"] = {{"C", fmt_double(rep.C)},
                {"rho", fmt_double(rep.rho)},
                {"tau", fmt_double(rep.tau)},
                {"alpha", fmt_double(rep.alpha)}};
  j["subsampled"] = rep.subsampled;
  return j;
}

Json visual_report_to_json(const VisualReport& rep) {
  Json j;
  j["pass"] = rep.pass;
  j["delta"] = format_rational(rep.delta);
  j["diam_lower"] = level_constants_to_json(rep.diam_lower);
  j["diam_upper"] = level_constants_to_json(rep.diam_upper);
  j["dist_lower"] = level_constants_to_json(rep.dist_lower);
  j["stability_factor"] = fmt_double(rep.stability_factor);
  if (!rep.witness.empty()) j["witness"] = rep.witness;
  return j;
}

Json properties_to_json(const DecompositionProperties& rep) {
  Json j;
  j["pass"] = rep.pass;
  j["level_sizes"] = rep.level_sizes;
  j["empty_levels"] = rep.empty_levels;
  auto wit = [](const std::optional<PropertyWitness>& w) {
    Json jw;
    if (w) {
      jw["level"] = w->level;
      jw["what"] = w->what;
    }
    return jw;
  };
  j["diam"] = {{"pass", rep.diam_pass},
               {"lower", level_constants_to_json(rep.diam_lower)},
               {"upper", level_constants_to_json(rep.diam_upper)},
               {"witness", wit(rep.diam_witness)}};
  j["dist"] = {{"pass", rep.dist_pass},
               {"lower", level_constants_to_json(rep.dist_lower)},
               {"witness", wit(rep.dist_witness)}};
  j["edge_like"] = {{"pass", rep.edge_like_pass}, {"witness", wit(rep.edge_like_witness)}};
  j["vertex_bound_N"] = rep.vertex_bound_N;
  j["interior_count"] = {{"pass", rep.interior_count_pass},
                         {"witness", wit(rep.interior_count_witness)}};
  j["three_points"] = {{"pass", rep.three_point_pass}, {"witness", wit(rep.three_point_witness)}};
  return j;
}

Json iso_report_to_json(const IsoReport& rep) {
  Json j;
  j["pass"] = rep.pass;
  j["levels_checked"] = rep.levels_checked;
  j["max_level_increment"] = rep.max_level_increment;
  Json fails = Json::array();
  for (const auto& f : rep.failures) fails.push_back({{"level", f.level}, {"what", f.what}});
  j["failures"] = std::move(fails);
  return j;
}

Json distortion_to_json(const DistortionFit& fit) {
  Json j;
  j["triples"] = fit.triples;
  j["alpha"] = fmt_double(fit.alpha);
  j["alpha_grid"] = fit.alpha_label;
  j["K"] = fmt_double(fit.coefficient);
  j["max_residual"] = fmt_double(fit.max_residual);
  return j;
}

Json geometric_constants_to_json(const GeometricConstantsReport& rep) {
  Json j;
  auto est = [](const ConstantEstimate& c) {
    Json je;
    je["value"] = fmt_double(c.value);
    je["value_sq"] = format_rational(c.ratio_sq);
    je["exact_sweep"] = c.exact_sweep;
    je["witness"] = c.witness;
    return je;
  };
  j["bounded_turning_K"] = est(rep.bounded_turning);
  if (rep.separation) j["separation"] = est(*rep.separation);
  if (rep.density) j["density"] = est(*rep.density);
  j["density_pairs_without_witness"] = rep.density_pairs_without_witness;
  j["doubling_estimate"] = rep.doubling_estimate;
  j["doubling_is_estimate"] = true;
  return j;
}

std::string excursion_to_csv(const ExcursionSample& e) {
  std::ostringstream out;
  out << "t,e\n";
  for (std::size_t i = 0; i < e.units.size(); ++i) {
    Rational t(static_cast<long>(i), static_cast<long>(e.resolution));
    out << format_rational(t) << "," << format_rational(e.value(i)) << "\n";
  }
  return out.str();
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::Io, "cannot open " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::Schema, path + ": " + e.what());
  }
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(Errc::Io, "cannot open " + path + " for writing");
  out << content;
  if (!out) fail(Errc::Io, "failed writing " + path);
}

}  // namespace csst
