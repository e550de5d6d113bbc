#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "kzhol/engine.hpp"
#include "kzhol/path.hpp"
#include "kzhol/series.hpp"

namespace kzhol {

using Json = nlohmann::json;

/// {"degree": D, "generators": [...], "terms": [{"word": [labels], "re": x, "im": y}]}
Json series_to_json(const Series& g);
/// Uses `gens` when given, otherwise builds the catalogue from "generators".
Series series_from_json(const Json& j, CataloguePtr gens = nullptr);

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

/// {"punctures": [[re,im]...], "start": {"index": i, "v": [re,im]}, "end": {...}, "waypoints": [...]}
Json path_to_json(const PathSpec& path);
PathSpec path_from_json(const Json& j);

/// Crossings, rot and |v_j/v_i| of an analyzed path; `samples` > 0 adds plot points.
Json analyzed_path_to_json(const AnalyzedPath& path, int samples = 0);

Json engine_config_to_json(const EngineConfig& cfg);

Json read_json_file(const std::filesystem::path& file);
void write_json_file(const std::filesystem::path& file, const Json& j);

}  // namespace kzhol
