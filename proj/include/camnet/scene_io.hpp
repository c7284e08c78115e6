#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "camnet/fusion.hpp"
#include "camnet/objective.hpp"
#include "camnet/optimizer.hpp"
#include "camnet/oracle.hpp"

namespace camnet {

using Json = nlohmann::ordered_json;

/// Strict scene parser: unknown keys, missing required keys and type
/// mismatches throw Error(Parse) with a JSON-pointer path in the message.
/// Scene invariant violations are reported the same way.
Scene scene_from_json(const nlohmann::json& doc);
Scene parse_scene(const std::string& text);
Scene load_scene(const std::filesystem::path& path);

/// Canonical form: every camera carries pan/tilt and all eight distortion
/// coefficients; bounds appear only when set.
Json scene_to_json(const Scene& scene);

Json report_to_json(const Scene& scene, const QualityReport& report);

Json opt_result_to_json(const ReconfigProblem& problem, const OptResult& result);
Json grid_result_to_json(const ReconfigProblem& problem, const GridSpec& grid,
                         const GridResult& result);
Json error_stats_to_json(const ErrorTrialStats& stats);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& doc);

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace camnet
