// camnet: evaluate and reconfigure camera networks from the command line.
//
// Exit codes: 0 ok, 1 input error, 2 uncovered target (evaluate),
// 3 infeasible result (optimize, oracle).

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "camnet/fusion.hpp"
#include "camnet/objective.hpp"
#include "camnet/optimizer.hpp"
#include "camnet/oracle.hpp"
#include "camnet/raster.hpp"
#include "camnet/scene_io.hpp"

namespace {

using namespace camnet;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUncovered = 2;
constexpr int kExitInfeasible = 3;

struct ProblemFlags {
  std::string mode = "ptz";
  std::string objective = "mean";
  double penalty = 1e6;
};

void add_problem_flags(CLI::App* cmd, ProblemFlags& f) {
  cmd->add_option("--mode", f.mode, "ptz | drone")->check(CLI::IsMember({"ptz", "drone"}));
  cmd->add_option("--objective", f.objective, "mean | minimax")
      ->check(CLI::IsMember({"mean", "minimax"}));
  cmd->add_option("--penalty", f.penalty, "coverage penalty per uncovered target, mm/px")
      ->check(CLI::PositiveNumber);
}

ReconfigProblem make_problem(const std::string& scene_path, const ProblemFlags& f) {
  ReconfigProblem p{load_scene(scene_path)};
  p.mode = parse_mode(f.mode);
  p.objective.kind = parse_objective_kind(f.objective);
  p.objective.coverage_penalty = f.penalty;
  return p;
}

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(text);
    std::size_t used_w = 0;
    std::size_t used_h = 0;
    const int w = std::stoi(text.substr(0, x), &used_w);
    const int h = std::stoi(text.substr(x + 1), &used_h);
    if (used_w != x || used_h != text.size() - x - 1) throw std::invalid_argument(text);
    return {w, h};
  } catch (const std::logic_error&) {
    throw Error(ErrorCode::InvalidArgument, "bad --grid '" + text + "' (expected WxH)");
  }
}

int cmd_evaluate(const std::string& scene_path) {
  const Scene scene = load_scene(scene_path);
  const QualityReport report = fuse_scene(scene);
  std::cout << dump(report_to_json(scene, report));
  return is_feasible(report) ? kExitOk : kExitUncovered;
}

struct OptimizeFlags {
  ProblemFlags problem;
  int starts = 16;
  std::uint64_t seed = 0;
  int max_evals = 64000;
  std::string out;
  std::string result;
};

int cmd_optimize(const std::string& scene_path, const OptimizeFlags& f) {
  ReconfigProblem p = make_problem(scene_path, f.problem);
  p.starts = f.starts;
  p.seed = f.seed;
  p.max_evals = f.max_evals;
  const OptResult r = solve(p);
  const std::string result_json = dump(opt_result_to_json(p, r));
  write_text(f.out, dump(scene_to_json(r.best_scene)));
  write_text(f.result.empty() ? f.out + ".result.json" : f.result, result_json);
  std::cout << result_json;
  return r.feasible ? kExitOk : kExitInfeasible;
}

int cmd_map(const std::string& scene_path, const std::string& grid, const std::string& plane,
            const std::string& component, const std::string& out) {
  const Scene scene = load_scene(scene_path);
  const auto [w, h] = parse_grid(grid);
  QualityComponent c = QualityComponent::Total;
  if (component == "perspective") c = QualityComponent::Perspective;
  if (component == "distortion") c = QualityComponent::Distortion;
  const QualityMapRaster raster = quality_map(scene, parse_plane(plane), w, h, c);
  const std::string ext = std::filesystem::path(out).extension().string();
  if (ext == ".pgm") {
    write_text(out, raster_to_pgm(raster));
  } else if (ext == ".csv") {
    write_text(out, raster_to_csv(raster));
  } else {
    throw Error(ErrorCode::InvalidArgument, "--out must end in .pgm or .csv");
  }
  return kExitOk;
}

int cmd_oracle(const std::string& scene_path, const ProblemFlags& pf, const GridSpec& grid,
               const std::string& out) {
  const ReconfigProblem p = make_problem(scene_path, pf);
  const GridResult r = grid_search(p, grid);
  if (!out.empty()) write_text(out, dump(scene_to_json(r.result.best_scene)));
  std::cout << dump(grid_result_to_json(p, grid, r));
  return r.result.feasible ? kExitOk : kExitInfeasible;
}

const Camera& find_camera(const Scene& s, const std::string& id) {
  for (const auto& c : s.cameras())
    if (c.id == id) return c;
  throw Error(ErrorCode::InvalidArgument, "no camera with id '" + id + "'");
}

const Target& find_target(const Scene& s, const std::string& id) {
  for (const auto& t : s.targets())
    if (t.id == id) return t;
  throw Error(ErrorCode::InvalidArgument, "no target with id '" + id + "'");
}

int cmd_simulate_error(const std::string& scene_path, const std::string& camera_id,
                       const std::string& target_id, double length, int trials,
                       std::uint64_t seed) {
  const Scene scene = load_scene(scene_path);
  const ErrorTrialStats stats = simulate_quantization_error(
      find_camera(scene, camera_id), find_target(scene, target_id), length, trials, seed);
  std::cout << dump(error_stats_to_json(stats));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sensing-quality evaluation and reconfiguration for camera networks"};
  app.require_subcommand(1);

  std::string scene_path;

  auto* evaluate = app.add_subcommand("evaluate", "Per-pair and per-target quality report");
  evaluate->add_option("scene", scene_path, "scene JSON")->required();

  OptimizeFlags opt;
  auto* optimize = app.add_subcommand("optimize", "Multi-start reconfiguration");
  optimize->add_option("scene", scene_path, "scene JSON")->required();
  add_problem_flags(optimize, opt.problem);
  optimize->add_option("--starts", opt.starts, "independent local searches")
      ->check(CLI::PositiveNumber);
  optimize->add_option("--seed", opt.seed, "RNG seed");
  optimize->add_option("--max-evals", opt.max_evals, "objective evaluations over all starts")
      ->check(CLI::PositiveNumber);
  optimize->add_option("--out", opt.out, "optimized scene JSON")->required();
  optimize->add_option("--result", opt.result, "result JSON (default: <out>.result.json)");

  std::string grid = "100x100";
  std::string plane = "z=0";
  std::string component = "total";
  std::string map_out;
  auto* map = app.add_subcommand("map", "Quality raster on an axis-aligned plane");
  map->add_option("scene", scene_path, "scene JSON")->required();
  map->add_option("--grid", grid, "WxH cells");
  map->add_option("--plane", plane, "x=V | y=V | z=V (mm)");
  map->add_option("--component", component, "total | perspective | distortion")
      ->check(CLI::IsMember({"total", "perspective", "distortion"}));
  map->add_option("--out", map_out, "output .pgm or .csv")->required();

  ProblemFlags oracle_flags;
  GridSpec grid_spec;
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "Brute-force grid search");
  oracle->add_option("scene", scene_path, "scene JSON")->required();
  add_problem_flags(oracle, oracle_flags);
  oracle->add_option("--grid-points", grid_spec.points_per_dimension, "points per dimension");
  oracle->add_option("--max-grid", grid_spec.max_vertices, "vertex cap");
  oracle->add_option("--out", oracle_out, "best grid scene JSON");

  std::string camera_id;
  std::string target_id;
  double length = 100.0;
  int trials = 10000;
  std::uint64_t seed = 0;
  auto* sim = app.add_subcommand("simulate-error", "Pixel quantization error trials");
  sim->add_option("scene", scene_path, "scene JSON")->required();
  sim->add_option("--camera", camera_id, "camera id")->required();
  sim->add_option("--target", target_id, "target id")->required();
  sim->add_option("--length", length, "segment length, mm")->check(CLI::PositiveNumber);
  sim->add_option("--trials", trials, "trial count")->check(CLI::PositiveNumber);
  sim->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (evaluate->parsed()) return cmd_evaluate(scene_path);
    if (optimize->parsed()) return cmd_optimize(scene_path, opt);
    if (map->parsed()) return cmd_map(scene_path, grid, plane, component, map_out);
    if (oracle->parsed()) return cmd_oracle(scene_path, oracle_flags, grid_spec, oracle_out);
    if (sim->parsed()) {
      return cmd_simulate_error(scene_path, camera_id, target_id, length, trials, seed);
    }
  } catch (const camnet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
