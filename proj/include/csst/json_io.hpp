#pragma once

#include "csst/generators.hpp"
#include "csst/homeo.hpp"
#include "csst/quasivisual.hpp"
#include "csst/subdivision.hpp"
#include "csst/tree.hpp"

#include "json.hpp"

#include <string>

namespace csst {

using Json = nlohmann::ordered_json;

/// Tree schema: {"metric": "geodesic"|"euclidean",
///               "vertices": [{"id": int, "pos": ["x","y"]?}],
///               "edges": [{"u": int, "v": int, "len": "p/q"}],
///               "marks": [int]}
Json tree_to_json(const SimplicialMetricTree& tree);
SimplicialMetricTree tree_from_json(const Json& j);

/// {"delta": "1/8", "levels": [{"V": [ids], "tiles": [{"edges": [...],
///  "boundary": [...]}]}]}
Json subdivision_to_json(const SimplicialMetricTree& tree, const SubdivisionSequence& seq);

/// {"levels": [{"tiles": [{"tile_id": int, "word": "13"}],
///              "vertices": [{"v": int, "word_of_g0": "1"}]}]}
Json homeo_to_json(const SimplicialMetricTree& tree, const TileHomeomorphism& homeo);
TileHomeomorphism homeo_from_json(const Json& j);

/// Tile list entries {"word": "13", "diam": "1/2", "boundary": [["x","y"]]}.
Json tile_list_to_json(const std::vector<Word>& words);

Json qv_report_to_json(const QvReport& rep);
Json visual_report_to_json(const VisualReport& rep);
Json properties_to_json(const DecompositionProperties& rep);
Json iso_report_to_json(const IsoReport& rep);
Json distortion_to_json(const DistortionFit& fit);
Json geometric_constants_to_json(const GeometricConstantsReport& rep);

std::string excursion_to_csv(const ExcursionSample& e);

/// Serialize with a stable layout (2-space indent, trailing newline).
std::string dump_json(const Json& j);
Json load_json_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

/// Schema guards; failures carry JSON-pointer-style paths.
const Json& require_field(const Json& j, const std::string& key, const std::string& path);
void expect_array(const Json& j, const std::string& path);

}  // namespace csst
