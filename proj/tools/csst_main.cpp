// Command-line front end: reproducible runs with JSON/SVG artifacts.

#include "csst/errors.hpp"
#include "csst/generators.hpp"
#include "csst/homeo.hpp"
#include "csst/json_io.hpp"
#include "csst/svg.hpp"

#include "CLI11.hpp"

#include <chrono>
#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace csst;

namespace {

constexpr const char* kVersion = "0.1.0";

std::vector<Rational> parse_grid(const std::string& grid) {
  std::vector<Rational> out;
  std::string cur;
  for (char c : grid + ",") {
    if (c == ',') {
      if (!cur.empty()) out.push_back(parse_rational(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (out.empty()) fail(Errc::InvalidInput, "empty delta grid");
  return out;
}

struct TreeInput {
  int jn_level = -1;
  std::string path;

  SimplicialMetricTree load(std::size_t word_budget) const {
    if (jn_level >= 0) return make_jn_model(jn_level, {word_budget});
    if (path.empty()) fail(Errc::InvalidInput, "provide --jn or --input");
    return tree_from_json(load_json_file(path));
  }
  std::string describe() const {
    return jn_level >= 0 ? "jn:" + std::to_string(jn_level) : path;
  }
};

void add_tree_input(CLI::App* cmd, TreeInput& input) {
  cmd->add_option("--jn", input.jn_level, "use the level-n model as input");
  cmd->add_option("--input", input.path, "input tree JSON");
}

struct ManifestBuilder {
  Json j;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  ManifestBuilder(const std::string& subcommand, const std::string& input) {
    j["subcommand"] = subcommand;
    j["inputs"] = Json::array();
    if (!input.empty()) j["inputs"].push_back(input);
    j["config"] = Json::object();
    j["outputs"] = Json::array();
    j["tool_version"] = kVersion;
  }
  void config(const std::string& key, const Json& value) { j["config"][key] = value; }
  void wrote(const std::string& path) { j["outputs"].push_back(path); }
  void finish(const std::string& path) {
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    j["wall_clock_ms"] = ms;
    wrote(path);
    write_file(path, dump_json(j));
  }
};

std::string out_path(const std::string& dir, const std::string& name) {
  fs::create_directories(dir);
  return (fs::path(dir) / name).string();
}

int run_verify(const std::string& input);

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-similar tree toolkit: subdivisions, tile maps, verification"};
  app.require_subcommand(1);
  int jobs = 1;
  app.add_option("--jobs", jobs, "worker threads for pair sweeps");

  // render
  auto* render = app.add_subcommand("render", "write an SVG of the level-n model");
  int render_level = 5;
  std::string render_out = "jn.svg";
  render->add_option("--level", render_level, "model level");
  render->add_option("--out", render_out, "output SVG path");

  // subdivide
  auto* subdivide = app.add_subcommand("subdivide", "build and verify a graded subdivision");
  TreeInput sub_input;
  add_tree_input(subdivide, sub_input);
  std::string sub_grid = "1/2,1/4,1/8,1/16";
  std::string sub_delta;
  int sub_levels = 3;
  std::string sub_out = "out";
  std::size_t sub_budget = 8;
  subdivide->add_option("--delta", sub_delta, "single delta (skips calibration)");
  subdivide->add_option("--delta-grid", sub_grid, "descending comma list of deltas");
  subdivide->add_option("--levels", sub_levels, "levels to build");
  subdivide->add_option("--budget-words", sub_budget, "word budget exponent (3^n tiles)");
  subdivide->add_option("--out", sub_out, "output directory");

  // verify-qv
  auto* verifyqv = app.add_subcommand("verify-qv", "quasi-visual checks on a cover");
  TreeInput qv_input;
  add_tree_input(verifyqv, qv_input);
  int qv_csst_levels = -1;
  std::string qv_delta = "1/4";
  int qv_levels = 3;
  std::string qv_visual;
  std::string qv_out = "qv_report.json";
  verifyqv->add_option("--csst-levels", qv_csst_levels, "check the word-tile cover to this depth");
  verifyqv->add_option("--delta", qv_delta, "grading delta for tree covers");
  verifyqv->add_option("--levels", qv_levels, "levels to build");
  verifyqv->add_option("--visual", qv_visual, "also run the visual check at this delta");
  verifyqv->add_option("--out", qv_out, "output report path");

  // homeo
  auto* homeo_cmd = app.add_subcommand("homeo", "build the tile-homeomorphism");
  TreeInput homeo_input;
  add_tree_input(homeo_cmd, homeo_input);
  std::string homeo_grid = "1/2,1/4,1/8,1/16";
  int homeo_levels = 3;
  std::string homeo_out = "out";
  homeo_cmd->add_option("--delta-grid", homeo_grid, "descending comma list of deltas");
  homeo_cmd->add_option("--levels", homeo_levels, "levels to build");
  homeo_cmd->add_option("--out", homeo_out, "output directory");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "calibrate, refine, verify, fit");
  TreeInput pipe_input;
  add_tree_input(pipeline, pipe_input);
  std::string pipe_grid = "1/2,1/4,1/8,1/16";
  int pipe_levels = 3;
  std::uint64_t pipe_seed = 0;
  std::size_t pipe_budget_words = 8;
  std::size_t pipe_triples = 4000;
  std::string pipe_out = "out";
  pipeline->add_option("--delta-grid", pipe_grid, "descending comma list of deltas");
  pipeline->add_option("--levels", pipe_levels, "levels to build");
  pipeline->add_option("--seed", pipe_seed, "sampling seed");
  pipeline->add_option("--budget-words", pipe_budget_words, "word budget exponent");
  pipeline->add_option("--triples", pipe_triples, "triple budget for the distortion fit");
  pipeline->add_option("--out", pipe_out, "output directory");

  // eta
  auto* eta = app.add_subcommand("eta", "distortion fit for a pipeline run");
  std::string eta_dir;
  std::size_t eta_triples = 4000;
  std::uint64_t eta_seed = 0;
  std::string eta_out;
  eta->add_option("--dir", eta_dir, "pipeline output directory")->required();
  eta->add_option("--triples", eta_triples, "triple budget");
  eta->add_option("--seed", eta_seed, "sampling seed");
  eta->add_option("--out", eta_out, "output path (default: <dir>/eta.json)");

  // crt
  auto* crt = app.add_subcommand("crt", "sample an excursion and its quotient tree");
  std::size_t crt_resolution = 1024;
  std::uint64_t crt_seed = 0;
  std::string crt_out = "out";
  std::string crt_epsilon = "0";
  crt->add_option("--resolution", crt_resolution, "grid size (power of two)");
  crt->add_option("--seed", crt_seed, "sampling seed");
  crt->add_option("--epsilon", crt_epsilon, "merge tolerance");
  crt->add_option("--out", crt_out, "output directory");

  // verify
  auto* verify = app.add_subcommand("verify", "re-validate stored artifacts");
  std::string verify_input;
  verify->add_option("--input", verify_input, "artifact file or pipeline directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*render) {
      write_file(render_out, render_jn_svg(render_level));
      std::cout << "wrote " << render_out << "\n";
      return 0;
    }

    if (*subdivide) {
      std::size_t budget = 2;
      for (std::size_t i = 0; i < sub_budget; ++i) budget *= 3;
      auto tree = sub_input.load(budget + 1);
      ManifestBuilder manifest("subdivide", sub_input.describe());
      manifest.config("levels", sub_levels);
      SubdivisionSequence seq;
      DecompositionProperties rep;
      if (!sub_delta.empty()) {
        manifest.config("delta", sub_delta);
        seq = build_levels(tree, {parse_rational(sub_delta), sub_levels});
        rep = verify_decomposition_properties(tree, seq);
      } else {
        manifest.config("delta_grid", sub_grid);
        CalibrationResult cal = calibrate_delta(tree, sub_levels, parse_grid(sub_grid));
        seq = std::move(cal.sequence);
        rep = std::move(cal.report);
      }
      std::string p1 = out_path(sub_out, "subdivision.json");
      write_file(p1, dump_json(subdivision_to_json(tree, seq)));
      manifest.wrote(p1);
      std::string p2 = out_path(sub_out, "properties.json");
      write_file(p2, dump_json(properties_to_json(rep)));
      manifest.wrote(p2);
      manifest.finish(out_path(sub_out, "manifest.json"));
      std::cout << (rep.pass ? "subdivision properties: pass\n"
                             : "subdivision properties: FAIL\n");
      return rep.pass ? 0 : 1;
    }

    if (*verifyqv) {
      Json out;
      bool pass;
      if (qv_csst_levels >= 0) {
        WordCover cover = WordCover::full_levels(qv_csst_levels);
        QvReport rep = check_quasivisual(cover, qv_csst_levels, {4000000, jobs});
        out["quasivisual"] = qv_report_to_json(rep);
        pass = rep.pass;
        if (!qv_visual.empty()) {
          VisualReport vis = check_visual(cover, parse_rational(qv_visual));
          out["visual"] = visual_report_to_json(vis);
          pass = pass && vis.pass;
        }
      } else {
        auto tree = qv_input.load(200000);
        SubdivisionSequence seq = build_levels(tree, {parse_rational(qv_delta), qv_levels});
        std::vector<Decomposition> decomps;
        for (auto& l : seq.levels) decomps.push_back(l.decomp);
        TreeCover cover(tree, decomps);
        QvReport rep = check_quasivisual(cover, qv_levels, {4000000, jobs});
        out["quasivisual"] = qv_report_to_json(rep);
        pass = rep.pass;
        if (!qv_visual.empty()) {
          VisualReport vis = check_visual(cover, parse_rational(qv_visual));
          out["visual"] = visual_report_to_json(vis);
          pass = pass && vis.pass;
        }
      }
      write_file(qv_out, dump_json(out));
      std::cout << (pass ? "quasi-visual: pass\n" : "quasi-visual: FAIL\n");
      return pass ? 0 : 1;
    }

    if (*homeo_cmd) {
      auto tree = homeo_input.load(200000);
      ManifestBuilder manifest("homeo", homeo_input.describe());
      manifest.config("delta_grid", homeo_grid);
      manifest.config("levels", homeo_levels);
      CalibrationResult cal = calibrate_delta(tree, homeo_levels, parse_grid(homeo_grid));
      TileHomeomorphism homeo = refine_homeo(tree, cal.sequence, cal.report);
      IsoReport iso = verify_isomorphism(tree, cal.sequence, homeo);
      std::string p1 = out_path(homeo_out, "subdivision.json");
      write_file(p1, dump_json(subdivision_to_json(tree, cal.sequence)));
      manifest.wrote(p1);
      std::string p2 = out_path(homeo_out, "homeo.json");
      write_file(p2, dump_json(homeo_to_json(tree, homeo)));
      manifest.wrote(p2);
      std::string p3 = out_path(homeo_out, "iso_report.json");
      write_file(p3, dump_json(iso_report_to_json(iso)));
      manifest.wrote(p3);
      manifest.finish(out_path(homeo_out, "manifest.json"));
      std::cout << (iso.pass ? "isomorphism: pass\n" : "isomorphism: FAIL\n");
      return iso.pass ? 0 : 1;
    }

    if (*pipeline) {
      std::size_t budget = 2;
      for (std::size_t i = 0; i < pipe_budget_words; ++i) budget *= 3;
      auto tree = pipe_input.load(budget + 1);
      ManifestBuilder manifest("pipeline", pipe_input.describe());
      manifest.config("delta_grid", pipe_grid);
      manifest.config("levels", pipe_levels);
      manifest.config("seed", pipe_seed);
      manifest.config("budget_words", pipe_budget_words);
      manifest.config("triples", pipe_triples);

      EndToEndResult r;
      try {
        r = end_to_end(tree, parse_grid(pipe_grid), pipe_levels, pipe_triples, pipe_seed);
      } catch (const Error& e) {
        std::cerr << "pipeline failed at calibration: " << e.what() << "\n";
        return 1;
      }
      auto put = [&](const std::string& name, const Json& j) {
        std::string p = out_path(pipe_out, name);
        write_file(p, dump_json(j));
        manifest.wrote(p);
      };
      put("tree.json", tree_to_json(tree));
      put("subdivision.json", subdivision_to_json(tree, r.sequence));
      put("properties.json", properties_to_json(r.properties));
      put("homeo.json", homeo_to_json(tree, r.homeo));
      put("iso_report.json", iso_report_to_json(r.isomorphism));
      put("qv_report.json", qv_report_to_json(r.image_qv));
      put("eta.json", distortion_to_json(r.distortion));
      put("image_tiles.json", tile_list_to_json(r.homeo.levels.back().tile_words));
      manifest.finish(out_path(pipe_out, "manifest.json"));
      if (!r.properties.pass) std::cerr << "failing stage: subdivision properties\n";
      else if (!r.isomorphism.pass) std::cerr << "failing stage: isomorphism\n";
      else if (!r.image_qv.pass) std::cerr << "failing stage: image quasi-visual check\n";
      std::cout << (r.pass ? "pipeline: pass\n" : "pipeline: FAIL\n");
      return r.pass ? 0 : 1;
    }

    if (*eta) {
      auto tree = tree_from_json(load_json_file((fs::path(eta_dir) / "tree.json").string()));
      TileHomeomorphism homeo =
          homeo_from_json(load_json_file((fs::path(eta_dir) / "homeo.json").string()));
      const auto& vmap = homeo.levels.back().vertex_words;
      std::vector<int> vertices;
      std::vector<DyadicPoint> images;
      for (const auto& [vid, w] : vmap) {
        vertices.push_back(tree.index_of_id(vid));
        images.push_back(apply_word(w, DyadicPoint::integer(0, 0)));
      }
      MetricPair mp;
      mp.n = vertices.size();
      mp.d1_sq = [&](std::size_t i, std::size_t j) {
        return tree.dist_sq(vertices[i], vertices[j]);
      };
      mp.d2_sq = [&](std::size_t i, std::size_t j) {
        return euclidean_dist_sq(images[i], images[j]);
      };
      DistortionFit fit = fit_distortion(mp, eta_triples, eta_seed);
      std::string out = eta_out.empty() ? (fs::path(eta_dir) / "eta.json").string() : eta_out;
      write_file(out, dump_json(distortion_to_json(fit)));
      std::cout << "alpha=" << fit.alpha << " K=" << fit.coefficient << "\n";
      return 0;
    }

    if (*crt) {
      ExcursionSample sample = brownian_excursion(crt_resolution, crt_seed);
      CrtQuotient q = crt_quotient(sample, parse_rational(crt_epsilon));
      ManifestBuilder manifest("crt", "");
      manifest.config("resolution", crt_resolution);
      manifest.config("seed", crt_seed);
      manifest.config("epsilon", crt_epsilon);
      std::string p1 = out_path(crt_out, "excursion.csv");
      write_file(p1, excursion_to_csv(sample));
      manifest.wrote(p1);
      std::string p2 = out_path(crt_out, "tree.json");
      write_file(p2, dump_json(tree_to_json(q.tree)));
      manifest.wrote(p2);
      std::string p3 = out_path(crt_out, "constants.json");
      Json jc = geometric_constants_to_json(geometric_constants(q.tree));
      jc["max_degree"] = q.max_degree;
      write_file(p3, dump_json(jc));
      manifest.wrote(p3);
      manifest.finish(out_path(crt_out, "manifest.json"));
      std::cout << "vertices=" << q.tree.vertex_count() << " max_degree=" << q.max_degree
                << "\n";
      return 0;
    }

    if (*verify) return run_verify(verify_input);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == Errc::Schema ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

namespace {

bool verify_homeo_intrinsic(const Json& j, std::ostream& log) {
  TileHomeomorphism homeo = homeo_from_json(j);
  bool ok = true;
  for (std::size_t n = 0; n < homeo.levels.size(); ++n) {
    const auto& level = homeo.levels[n];
    std::vector<Word> cut_words;
    for (const auto& [v, w] : level.vertex_words) cut_words.push_back(w);
    auto replay = csst_decompose(cut_words);
    std::vector<Word> replay_words;
    bool addressed = true;
    for (const auto& t : replay) {
      if (t.words.size() != 1) {
        addressed = false;
        break;
      }
      replay_words.push_back(t.words.front());
    }
    std::vector<Word> image = level.tile_words;
    std::sort(image.begin(), image.end());
    std::sort(replay_words.begin(), replay_words.end());
    if (!addressed || image != replay_words) {
      log << "level " << n << ": image tiles do not match the cut replay";
      if (addressed) {
        for (std::size_t i = 0; i < std::max(image.size(), replay_words.size()); ++i) {
          if (i < image.size() && i < replay_words.size() && image[i] == replay_words[i]) continue;
          log << "; first mismatch near word "
              << (i < image.size() ? image[i].str() : std::string("<none>"));
          break;
        }
      }
      log << "\n";
      ok = false;
    }
  }
  return ok;
}

int run_verify(const std::string& input) {
  if (fs::is_directory(input)) {
    auto tree = tree_from_json(load_json_file((fs::path(input) / "tree.json").string()));
    Json jsub = load_json_file((fs::path(input) / "subdivision.json").string());
    Rational delta = parse_rational(
        require_field(jsub, "delta", "").get<std::string>());
    const Json& jlevels = require_field(jsub, "levels", "");
    expect_array(jlevels, "/levels");
    if (jlevels.empty()) fail(Errc::Schema, "/levels: must not be empty");
    int n_max = static_cast<int>(jlevels.size()) - 1;

    SubdivisionSequence seq = build_levels(tree, {delta, n_max});
    bool ok = true;
    if (subdivision_to_json(tree, seq) != jsub) {
      std::cout << "subdivision: stored artifact differs from the rebuild\n";
      ok = false;
    }
    DecompositionProperties rep = verify_decomposition_properties(tree, seq);
    std::cout << "subdivision properties: " << (rep.pass ? "pass" : "FAIL") << "\n";
    ok = ok && rep.pass;

    fs::path homeo_path = fs::path(input) / "homeo.json";
    if (fs::exists(homeo_path)) {
      TileHomeomorphism homeo = homeo_from_json(load_json_file(homeo_path.string()));
      // vertex ids in the artifact are user ids
      for (auto& level : homeo.levels) {
        std::map<int, Word> remapped;
        for (const auto& [vid, w] : level.vertex_words) remapped[tree.index_of_id(vid)] = w;
        level.vertex_words = std::move(remapped);
      }
      IsoReport iso = verify_isomorphism(tree, seq, homeo);
      std::cout << "isomorphism: " << (iso.pass ? "pass" : "FAIL") << "\n";
      for (const auto& f : iso.failures)
        std::cout << "  level " << f.level << ": " << f.what << "\n";
      ok = ok && iso.pass;

      WordCover cover = image_cover(homeo);
      QvReport qv = check_quasivisual(cover, n_max);
      std::cout << "image quasi-visual: " << (qv.pass ? "pass" : "FAIL") << "\n";
      ok = ok && qv.pass;
    }
    return ok ? 0 : 1;
  }

  Json j = load_json_file(input);
  if (j.is_object() && j.contains("metric")) {
    tree_from_json(j);  // construction re-checks all invariants
    std::cout << "tree: pass\n";
    return 0;
  }
  if (j.is_object() && j.contains("delta") && j.contains("levels")) {
    const Json& levels = require_field(j, "levels", "");
    expect_array(levels, "/levels");
    if (levels.empty()) fail(Errc::Schema, "/levels: must not be empty");
    std::vector<int> prev;
    for (std::size_t n = 0; n < levels.size(); ++n) {
      std::string path = "/levels/" + std::to_string(n);
      const Json& vs = require_field(levels[n], "V", path);
      expect_array(vs, path + "/V");
      std::vector<int> cur;
      for (const auto& v : vs) cur.push_back(v.get<int>());
      std::sort(cur.begin(), cur.end());
      if (!std::includes(cur.begin(), cur.end(), prev.begin(), prev.end()))
        fail(Errc::Schema, path + "/V: cut sets must be nested");
      prev = std::move(cur);
      expect_array(require_field(levels[n], "tiles", path), path + "/tiles");
    }
    std::cout << "subdivision: schema pass (re-run with the pipeline directory for a full "
                 "replay)\n";
    return 0;
  }
  if (j.is_object() && j.contains("levels")) {
    std::ostringstream log;
    bool ok = verify_homeo_intrinsic(j, log);
    std::cout << log.str();
    std::cout << "homeo: " << (ok ? "pass" : "FAIL") << "\n";
    return ok ? 0 : 1;
  }
  fail(Errc::Schema, input + ": unrecognized artifact");
}

}  // namespace
