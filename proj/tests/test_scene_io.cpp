#include <doctest.h>

#include <cmath>
#include <string>

#include "camnet/scene_io.hpp"
#include "support.hpp"

using namespace camnet;
using namespace camnet::testing;

namespace {

std::string fixture(const std::string& name) { return std::string(CAMNET_FIXTURE_DIR) + "/" + name; }

// Runs the parser and returns the error message, or "" if it succeeded.
std::string parse_error(const std::string& text) {
  try {
    parse_scene(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    return e.what();
  }
  return "";
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

const char* kMinimal = R"({
  "workspace": {"min": [0, 0, 0], "max": [100, 100, 100]},
  "cameras": [{"id": "c", "position_mm": [50, 50, 100], "alpha_rad": 0.5, "resolution_w": 640}],
  "targets": [{"id": "t", "position_mm": [50, 50, 0]}]
})";

}  // namespace

TEST_CASE("fixtures round-trip through the canonical form") {
  for (const char* name : {"fig5_single.json", "ptz_3x3.json", "tiny_ptz.json", "drone_open.json",
                           "uncovered.json", "minimax_pair.json"}) {
    CAPTURE(name);
    const Scene scene = load_scene(fixture(name));
    const Json canonical = scene_to_json(scene);
    const Scene again = parse_scene(dump(canonical));
    CHECK(dump(scene_to_json(again)) == dump(canonical));
    REQUIRE(again.cameras().size() == scene.cameras().size());
    for (std::size_t i = 0; i < scene.cameras().size(); ++i) {
      const Camera& a = scene.cameras()[i];
      const Camera& b = again.cameras()[i];
      CHECK(a.id == b.id);
      CHECK(a.pose.position == b.pose.position);
      CHECK(a.pose.pan == b.pose.pan);
      CHECK(a.pose.tilt == b.pose.tilt);
      CHECK(a.intrinsics.half_angle() == b.intrinsics.half_angle());
      CHECK(a.intrinsics.resolution() == b.intrinsics.resolution());
      CHECK(a.intrinsics.distortion() == b.intrinsics.distortion());
      CHECK(a.bounds.pan.has_value() == b.bounds.pan.has_value());
    }
    CHECK(again.workspace().min == scene.workspace().min);
    CHECK(again.workspace().max == scene.workspace().max);
  }
}

TEST_CASE("canonical form fills defaults and keeps bounds") {
  const Scene scene = load_scene(fixture("ptz_3x3.json"));
  const Json j = scene_to_json(scene);
  CHECK(j["cameras"][0]["distortion"]["k3"] == 0.0);
  CHECK(j["cameras"][0]["distortion"]["k1"] == 0.12);
  CHECK_FALSE(j["cameras"][0].contains("bounds"));
  CHECK(j["cameras"][2]["bounds"]["pan"][1] == 2.6);
  CHECK(j["cameras"][2]["tilt_rad"] == 0.3);

  const Scene minimal = parse_scene(kMinimal);
  CHECK(minimal.cameras()[0].pose.pan == 0.0);
  CHECK(minimal.cameras()[0].intrinsics.distortion().is_zero());
}

TEST_CASE("unknown fields are rejected with their path") {
  const std::string msg = parse_error(R"({
    "workspace": {"min": [0, 0, 0], "max": [100, 100, 100]},
    "cameras": [{"id": "c", "position_mm": [50, 50, 100], "alpha_rad": 0.5,
                 "resolution_w": 640, "distortion": {"p1": 0.1}}],
    "targets": [{"id": "t", "position_mm": [50, 50, 0]}]
  })");
  CHECK(contains(msg, "/cameras/0/distortion/p1"));
  CHECK(contains(msg, "unknown field"));
  CHECK(contains(parse_error(R"({"workspace": {}, "cameras": [], "targets": [], "extra": 1})"),
                 "/extra"));
  try {
    load_scene(fixture("invalid_unknown_field.json"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(contains(e.what(), "invalid_unknown_field.json"));
    CHECK(contains(e.what(), "/cameras/0/distortion/p1"));
  }
}

TEST_CASE("scene invariants surface as parse errors") {
  try {
    load_scene(fixture("invalid_no_cameras.json"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(contains(e.what(), "camera"));
  }
  try {
    load_scene(fixture("invalid_duplicate_target.json"));
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(contains(e.what(), "robot"));
  }
}

TEST_CASE("missing fields and bad types") {
  std::string doc = kMinimal;
  auto replaced = [&](const std::string& from, const std::string& to) {
    std::string s = doc;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  CHECK(contains(parse_error(replaced(R"("alpha_rad": 0.5, )", "")), "/cameras/0/alpha_rad"));
  CHECK(contains(parse_error(replaced(R"("alpha_rad": 0.5, )", "")), "missing required field"));
  CHECK(contains(parse_error(replaced("640", "640.5")), "/cameras/0/resolution_w"));
  CHECK(contains(parse_error(replaced("640", "-640")), "/cameras/0/resolution_w"));
  CHECK(contains(parse_error(replaced(R"([50, 50, 0])", R"([50, 50])")),
                 "/targets/0/position_mm"));
  CHECK(contains(parse_error(replaced(R"("id": "t")", R"("id": 7)")), "/targets/0/id"));
  CHECK(contains(parse_error(replaced(R"("position_mm": [50, 50, 0])",
                                      R"("position_mm": [50, 50, -10])")),
                 "workspace"));
  CHECK(contains(parse_error("{not json"), "invalid JSON"));
  CHECK(contains(parse_error("[]"), "expected an object"));
  CHECK(parse_error(doc).empty());
}

TEST_CASE("report JSON carries the pair and target fields") {
  const Scene scene = load_scene(fixture("uncovered.json"));
  const QualityReport report = fuse_scene(scene);
  const Json j = report_to_json(scene, report);
  REQUIRE(j["pairs"].size() == 2);
  const Json& seen = j["pairs"][0];
  for (const char* key : {"camera", "target", "beta", "gamma", "distance", "visible", "q_p",
                          "q_d", "Q"}) {
    CAPTURE(key);
    CHECK(seen.contains(key));
  }
  CHECK(seen["visible"] == true);
  CHECK(j["pairs"][1]["visible"] == false);
  CHECK(j["targets"][0]["covered"] == true);
  CHECK(j["targets"][1]["covered"] == false);
  CHECK(j["targets"][1]["fused_q"] == "inf");
  CHECK(j["targets"][0]["visible_cameras"][0] == "c0");
  CHECK(j["feasible"] == false);
  CHECK(j["objective"].contains("mean"));
  CHECK(j["objective"].contains("minimax"));
}

TEST_CASE("fig5 scene: fused quality equals the single pair quality") {
  const Scene scene = load_scene(fixture("fig5_single.json"));
  const QualityReport report = fuse_scene(scene);
  REQUIRE(report.pairs[0].quality.has_value());
  CHECK(report.targets[0].fused_q == report.pairs[0].quality->q_total);
  // On the axis q_d is one, leaving 2 * 3000 * tan(pi/4) / 1000.
  CHECK(report.targets[0].fused_q == doctest::Approx(6.0).epsilon(1e-9));
}

TEST_CASE("drone result echoes the default bounds") {
  const Scene scene = load_scene(fixture("drone_open.json"));
  const ReconfigProblem problem{scene, Mode::Drone, {}, 2, 1, 2000};
  const Json j = opt_result_to_json(problem, solve(problem));
  REQUIRE(j["bounds"].size() == 2);
  CHECK(j["bounds"][0]["camera"] == "d0");
  CHECK(j["bounds"][0]["position_min"][2] == kDroneMinHeight);
  CHECK(j["bounds"][0]["position_max"][0] == 5000.0);
  CHECK(j["mode"] == "drone");
  CHECK(j["best_config"].size() == 6);
}

TEST_CASE("error stats JSON") {
  ErrorTrialStats s;
  s.trials = 3;
  s.bound = 2.5;
  const Json j = error_stats_to_json(s);
  CHECK(j["trials"] == 3);
  CHECK(j["bound_Q"] == 2.5);
  CHECK(dump(j).back() == '\n');
}
