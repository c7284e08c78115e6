#include "camnet/scene_io.hpp"

#include <fstream>
#include <cmath>
#include <initializer_list>
#include <limits>
#include <set>
#include <sstream>
#include <string_view>

namespace camnet {

namespace {

using InJson = nlohmann::json;

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
  throw Error(ErrorCode::Parse, (path.empty() ? std::string("/") : path) + ": " + msg);
}

void only_keys(const InJson& obj, const std::string& path,
               std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || a == key;
    if (!ok) parse_fail(path + "/" + key, "unknown field");
  }
}

const InJson& member(const InJson& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path + "/" + key, "missing required field");
  return *it;
}

double number(const InJson& v, const std::string& path) {
  if (!v.is_number()) parse_fail(path, "expected a number");
  return v.get<double>();
}

double number_or(const InJson& obj, const std::string& path, const char* key, double fallback) {
  const auto it = obj.find(key);
  return it == obj.end() ? fallback : number(*it, path + "/" + key);
}

std::string text(const InJson& v, const std::string& path) {
  if (!v.is_string()) parse_fail(path, "expected a string");
  return v.get<std::string>();
}

Eigen::Vector3d vec3(const InJson& v, const std::string& path) {
  if (!v.is_array() || v.size() != 3) parse_fail(path, "expected an array of 3 numbers");
  return {number(v[0], path + "/0"), number(v[1], path + "/1"), number(v[2], path + "/2")};
}

Interval interval(const InJson& v, const std::string& path) {
  if (!v.is_array() || v.size() != 2) parse_fail(path, "expected [lo, hi]");
  Interval iv{number(v[0], path + "/0"), number(v[1], path + "/1")};
  if (!(iv.lo <= iv.hi)) parse_fail(path, "lo must be <= hi");
  return iv;
}

DistortionCoefficients distortion(const InJson& v, const std::string& path) {
  only_keys(v, path, {"k1", "k2", "k3", "k4", "k5", "k6", "s1", "s2"});
  DistortionCoefficients d;
  d.k1 = number_or(v, path, "k1", 0.0);
  d.k2 = number_or(v, path, "k2", 0.0);
  d.k3 = number_or(v, path, "k3", 0.0);
  d.k4 = number_or(v, path, "k4", 0.0);
  d.k5 = number_or(v, path, "k5", 0.0);
  d.k6 = number_or(v, path, "k6", 0.0);
  d.s1 = number_or(v, path, "s1", 0.0);
  d.s2 = number_or(v, path, "s2", 0.0);
  return d;
}

CameraBounds bounds(const InJson& v, const std::string& path) {
  only_keys(v, path, {"pan", "tilt", "position_min", "position_max"});
  CameraBounds b;
  if (v.contains("pan")) b.pan = interval(v["pan"], path + "/pan");
  if (v.contains("tilt")) b.tilt = interval(v["tilt"], path + "/tilt");
  if (v.contains("position_min")) b.position_min = vec3(v["position_min"], path + "/position_min");
  if (v.contains("position_max")) b.position_max = vec3(v["position_max"], path + "/position_max");
  return b;
}

Camera camera(const InJson& v, const std::string& path) {
  only_keys(v, path,
            {"id", "position_mm", "pan_rad", "tilt_rad", "alpha_rad", "resolution_w",
             "distortion", "bounds"});
  const InJson& res = member(v, path, "resolution_w");
  if (!res.is_number_integer()) parse_fail(path + "/resolution_w", "expected an integer");
  const auto w = res.get<long long>();
  if (w < 1 || w > std::numeric_limits<int>::max()) {
    parse_fail(path + "/resolution_w", "must be a positive pixel count");
  }
  const double alpha = number(member(v, path, "alpha_rad"), path + "/alpha_rad");
  DistortionCoefficients d;
  if (v.contains("distortion")) d = distortion(v["distortion"], path + "/distortion");

  CameraPose pose;
  pose.position = vec3(member(v, path, "position_mm"), path + "/position_mm");
  pose.pan = number_or(v, path, "pan_rad", 0.0);
  pose.tilt = number_or(v, path, "tilt_rad", 0.0);
  try {
    return Camera{text(member(v, path, "id"), path + "/id"),
                  CameraIntrinsics(alpha, static_cast<int>(w), d), pose,
                  v.contains("bounds") ? bounds(v["bounds"], path + "/bounds") : CameraBounds{}};
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Parse) throw;
    parse_fail(path, e.what());
  }
}

Json vec_json(const Eigen::Vector3d& v) { return Json::array({v.x(), v.y(), v.z()}); }

Json interval_json(const Interval& iv) { return Json::array({iv.lo, iv.hi}); }

Json bounds_json(const CameraBounds& b) {
  Json j = Json::object();
  if (b.pan) j["pan"] = interval_json(*b.pan);
  if (b.tilt) j["tilt"] = interval_json(*b.tilt);
  if (b.position_min) j["position_min"] = vec_json(*b.position_min);
  if (b.position_max) j["position_max"] = vec_json(*b.position_max);
  return j;
}

Json quality_value(double v) {
  if (std::isinf(v)) return "inf";
  return v;
}

}  // namespace

Scene scene_from_json(const InJson& doc) {
  only_keys(doc, "", {"workspace", "cameras", "targets"});
  const InJson& ws = member(doc, "", "workspace");
  only_keys(ws, "/workspace", {"min", "max"});
  Box box{vec3(member(ws, "/workspace", "min"), "/workspace/min"),
          vec3(member(ws, "/workspace", "max"), "/workspace/max")};

  const InJson& cams = member(doc, "", "cameras");
  if (!cams.is_array()) parse_fail("/cameras", "expected an array");
  std::vector<Camera> cameras;
  for (std::size_t i = 0; i < cams.size(); ++i) {
    cameras.push_back(camera(cams[i], "/cameras/" + std::to_string(i)));
  }

  const InJson& tgts = member(doc, "", "targets");
  if (!tgts.is_array()) parse_fail("/targets", "expected an array");
  std::vector<Target> targets;
  for (std::size_t i = 0; i < tgts.size(); ++i) {
    const std::string path = "/targets/" + std::to_string(i);
    only_keys(tgts[i], path, {"id", "position_mm"});
    targets.push_back({text(member(tgts[i], path, "id"), path + "/id"),
                       vec3(member(tgts[i], path, "position_mm"), path + "/position_mm")});
  }
  try {
    return Scene(std::move(cameras), std::move(targets), box);
  } catch (const Error& e) {
    parse_fail("", e.what());
  }
}

Scene parse_scene(const std::string& text) {
  InJson doc;
  try {
    doc = InJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, std::string("/: invalid JSON: ") + e.what());
  }
  return scene_from_json(doc);
}

Scene load_scene(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Parse, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  try {
    return parse_scene(ss.str());
  } catch (const Error& e) {
    throw Error(ErrorCode::Parse, path.string() + ": " + e.what());
  }
}

Json scene_to_json(const Scene& scene) {
  Json doc;
  doc["workspace"] = {{"min", vec_json(scene.workspace().min)},
                      {"max", vec_json(scene.workspace().max)}};
  Json cams = Json::array();
  for (const auto& c : scene.cameras()) {
    const auto& d = c.intrinsics.distortion();
    Json j;
    j["id"] = c.id;
    j["position_mm"] = vec_json(c.pose.position);
    j["pan_rad"] = c.pose.pan;
    j["tilt_rad"] = c.pose.tilt;
    j["alpha_rad"] = c.intrinsics.half_angle();
    j["resolution_w"] = c.intrinsics.resolution();
    j["distortion"] = {{"k1", d.k1}, {"k2", d.k2}, {"k3", d.k3}, {"k4", d.k4},
                       {"k5", d.k5}, {"k6", d.k6}, {"s1", d.s1}, {"s2", d.s2}};
    Json b = bounds_json(c.bounds);
    if (!b.empty()) j["bounds"] = std::move(b);
    cams.push_back(std::move(j));
  }
  doc["cameras"] = std::move(cams);
  Json tgts = Json::array();
  for (const auto& t : scene.targets()) {
    tgts.push_back({{"id", t.id}, {"position_mm", vec_json(t.position)}});
  }
  doc["targets"] = std::move(tgts);
  return doc;
}

Json report_to_json(const Scene& scene, const QualityReport& report) {
  Json pairs = Json::array();
  for (const auto& p : report.pairs) {
    Json j;
    j["camera"] = scene.cameras()[p.camera].id;
    j["target"] = scene.targets()[p.target].id;
    if (p.geometry) {
      j["beta"] = p.geometry->beta;
      j["gamma"] = p.geometry->gamma;
      j["distance"] = p.geometry->distance;
    }
    j["visible"] = p.visible;
    if (p.quality) {
      j["q_p"] = p.quality->q_p;
      j["q_d"] = p.quality->q_d;
      j["Q"] = p.quality->q_total;
    }
    if (!p.error.empty()) j["error"] = p.error;
    pairs.push_back(std::move(j));
  }
  Json targets = Json::array();
  for (const auto& t : report.targets) {
    Json seen = Json::array();
    for (const auto& c : t.contributors) {
      if (c.visible) seen.push_back(scene.cameras()[c.camera].id);
    }
    targets.push_back({{"id", t.target_id},
                       {"covered", t.covered},
                       {"fused_q", quality_value(t.fused_q)},
                       {"visible_cameras", std::move(seen)}});
  }
  Json doc;
  doc["pairs"] = std::move(pairs);
  doc["targets"] = std::move(targets);
  doc["objective"] = {
      {"mean", objective_value(report, {ObjectiveKind::Mean})},
      {"minimax", objective_value(report, {ObjectiveKind::Minimax})}};
  doc["feasible"] = is_feasible(report);
  return doc;
}

Json opt_result_to_json(const ReconfigProblem& problem, const OptResult& result) {
  Json doc;
  doc["mode"] = std::string(to_string(problem.mode));
  doc["objective"] = std::string(to_string(problem.objective.kind));
  doc["coverage_penalty"] = problem.objective.coverage_penalty;
  doc["starts"] = problem.starts;
  doc["seed"] = problem.seed;
  doc["max_evals"] = problem.max_evals;
  doc["best_value"] = result.best_value;
  doc["feasible"] = result.feasible;
  doc["evals_used"] = result.evals_used;
  doc["clamped"] = result.clamped;
  doc["best_config"] = result.best_config;
  doc["per_start_values"] = result.per_start_values;
  Json bounds = Json::array();
  const auto resolved = resolved_bounds(problem.scene, problem.mode);
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    Json b = bounds_json(resolved[i]);
    Json entry;
    entry["camera"] = problem.scene.cameras()[i].id;
    for (auto& [k, v] : b.items()) entry[k] = v;
    bounds.push_back(std::move(entry));
  }
  doc["bounds"] = std::move(bounds);
  doc["report"] = report_to_json(result.best_scene, result.report);
  return doc;
}

Json grid_result_to_json(const ReconfigProblem& problem, const GridSpec& grid,
                         const GridResult& result) {
  Json doc = opt_result_to_json(problem, result.result);
  doc.erase("starts");
  doc.erase("seed");
  doc.erase("max_evals");
  doc["grid_points"] = grid.points_per_dimension;
  doc["grid_size"] = result.grid_size;
  doc["lipschitz_slack"] = result.lipschitz_slack;
  return doc;
}

Json error_stats_to_json(const ErrorTrialStats& s) {
  Json doc;
  doc["trials"] = s.trials;
  doc["bound_Q"] = s.bound;
  doc["position_violations"] = s.position_violations;
  doc["length_violations"] = s.length_violations;
  doc["max_ratio"] = s.max_ratio;
  doc["ratio_q99"] = s.ratio_q99;
  doc["max_length_ratio"] = s.max_length_ratio;
  doc["mean_length_error"] = s.mean_length_error;
  doc["mean_position_error"] = s.mean_position_error;
  return doc;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::InvalidArgument, "failed writing " + path.string());
}

}  // namespace camnet
