#include "camnet/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "camnet/nelder_mead.hpp"

namespace camnet {

std::string_view to_string(Mode mode) { return mode == Mode::Ptz ? "ptz" : "drone"; }

Mode parse_mode(std::string_view text) {
  if (text == "ptz") return Mode::Ptz;
  if (text == "drone") return Mode::Drone;
  throw Error(ErrorCode::InvalidArgument,
              "unknown mode '" + std::string(text) + "' (expected ptz|drone)");
}

std::size_t variables_per_camera(Mode mode) { return mode == Mode::Ptz ? 2 : 3; }

std::vector<CameraBounds> resolved_bounds(const Scene& scene, Mode mode) {
  const Box& ws = scene.workspace();
  std::vector<CameraBounds> out;
  out.reserve(scene.cameras().size());
  for (const auto& cam : scene.cameras()) {
    CameraBounds b = cam.bounds;
    if (mode == Mode::Ptz) {
      if (!b.pan) b.pan = Interval{-std::numbers::pi, std::numbers::pi};
      if (!b.tilt) b.tilt = Interval{0.0, std::numbers::pi / 2};
    } else {
      if (!b.position_min) {
        Eigen::Vector3d lo = ws.min;
        lo.z() = std::max(lo.z(), kDroneMinHeight);
        b.position_min = lo;
      } else if (b.position_min->z() < kDroneMinHeight) {
        throw Error(ErrorCode::InvalidArgument,
                    "camera '" + cam.id + "': drone position_min z must be >= " +
                        std::to_string(kDroneMinHeight) + " mm");
      }
      if (!b.position_max) b.position_max = ws.max;
      if (!(b.position_min->array() <= b.position_max->array()).all()) {
        throw Error(ErrorCode::InvalidArgument,
                    "camera '" + cam.id + "': empty drone position box");
      }
      if (!ws.contains(*b.position_min) || !ws.contains(*b.position_max)) {
        throw Error(ErrorCode::InvalidArgument,
                    "camera '" + cam.id + "': drone position box leaves the workspace");
      }
    }
    out.push_back(std::move(b));
  }
  return out;
}

std::vector<Interval> variable_bounds(const Scene& scene, Mode mode) {
  std::vector<Interval> out;
  for (const auto& b : resolved_bounds(scene, mode)) {
    if (mode == Mode::Ptz) {
      out.push_back(*b.pan);
      out.push_back(*b.tilt);
    } else {
      for (int k = 0; k < 3; ++k) out.push_back({(*b.position_min)[k], (*b.position_max)[k]});
    }
  }
  return out;
}

Configuration current_configuration(const Scene& scene, Mode mode) {
  Configuration c;
  for (const auto& cam : scene.cameras()) {
    if (mode == Mode::Ptz) {
      c.push_back(cam.pose.pan);
      c.push_back(cam.pose.tilt);
    } else {
      for (int k = 0; k < 3; ++k) c.push_back(cam.pose.position[k]);
    }
  }
  return c;
}

namespace {

void check_length(const Scene& scene, Mode mode, std::size_t n) {
  const std::size_t want = variables_per_camera(mode) * scene.cameras().size();
  if (n != want) {
    throw Error(ErrorCode::InvalidArgument,
                "configuration length " + std::to_string(n) + " does not match expected " +
                    std::to_string(want) + " for " + std::string(to_string(mode)) + " mode");
  }
}

CameraPose pose_for(const CameraPose& base, Mode mode, const double* v) {
  CameraPose p = base;
  if (mode == Mode::Ptz) {
    p.pan = v[0];
    p.tilt = v[1];
  } else {
    p.position = {v[0], v[1], v[2]};
    p.tilt = 0.0;
  }
  return p;
}

std::vector<CameraPose> poses_for(const Scene& scene, Mode mode, std::span<const double> config) {
  const std::size_t stride = variables_per_camera(mode);
  std::vector<CameraPose> poses;
  poses.reserve(scene.cameras().size());
  for (std::size_t i = 0; i < scene.cameras().size(); ++i) {
    poses.push_back(pose_for(scene.cameras()[i].pose, mode, config.data() + i * stride));
  }
  return poses;
}

}  // namespace

AppliedConfiguration apply_configuration(const Scene& scene, Mode mode,
                                         std::span<const double> config) {
  check_length(scene, mode, config.size());
  const auto bounds = variable_bounds(scene, mode);
  Configuration clamped(config.begin(), config.end());
  std::size_t moved = 0;
  for (std::size_t k = 0; k < clamped.size(); ++k) {
    const double c = bounds[k].clamp(clamped[k]);
    if (c != clamped[k]) ++moved;
    clamped[k] = c;
  }
  Scene out = scene;
  const auto poses = poses_for(scene, mode, clamped);
  for (std::size_t i = 0; i < poses.size(); ++i) out = out.with_pose(i, poses[i]);
  return {std::move(out), std::move(clamped), moved};
}

ConfigurationObjective::ConfigurationObjective(const Scene& scene, Mode mode, ObjectiveSpec spec)
    : scene_(&scene), mode_(mode), spec_(spec), bounds_(variable_bounds(scene, mode)) {}

std::vector<CameraPose> ConfigurationObjective::clamped_poses(
    std::span<const double> config) const {
  check_length(*scene_, mode_, config.size());
  Configuration c(config.begin(), config.end());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = bounds_[k].clamp(c[k]);
  return poses_for(*scene_, mode_, c);
}

std::vector<FusedValue> ConfigurationObjective::fused(std::span<const double> config) const {
  return fuse_targets(*scene_, clamped_poses(config));
}

namespace {

// Angle outside the cone, or pi for a coincident point.
double cone_gap(const Camera& cam, const CameraPose& pose, const Eigen::Vector3d& p) {
  try {
    return std::max(0.0, view_geometry(pose, p).beta - cam.intrinsics.half_angle());
  } catch (const Error&) {
    return std::numbers::pi;
  }
}

}  // namespace

double ConfigurationObjective::coverage_excess(std::span<const double> config) const {
  const auto poses = clamped_poses(config);
  const auto& cams = scene_->cameras();
  double total = 0.0;
  for (const auto& t : scene_->targets()) {
    double best = HUGE_VAL;
    for (std::size_t i = 0; i < cams.size(); ++i) {
      best = std::min(best, cone_gap(cams[i], poses[i], t.position));
    }
    total += best;
  }
  return total;
}

double ConfigurationObjective::pair_excess(std::span<const double> config) const {
  const auto poses = clamped_poses(config);
  const auto& cams = scene_->cameras();
  double total = 0.0;
  for (const auto& t : scene_->targets()) {
    for (std::size_t i = 0; i < cams.size(); ++i) total += cone_gap(cams[i], poses[i], t.position);
  }
  return total;
}

double ConfigurationObjective::operator()(std::span<const double> config) const {
  return objective_value(fused(config), spec_);
}

double ConfigurationObjective::normalized(std::span<const double> unit) const {
  const Configuration c = from_unit(unit);
  return (*this)(c);
}

ConfigurationObjective::Evaluation ConfigurationObjective::evaluate(
    std::span<const double> config) const {
  const auto f = fused(config);
  return {objective_value(f, spec_), is_feasible(f)};
}

Configuration ConfigurationObjective::to_unit(std::span<const double> config) const {
  Configuration u(config.size());
  for (std::size_t k = 0; k < u.size(); ++k) {
    const Interval& b = bounds_[k];
    u[k] = b.width() > 0.0 ? (b.clamp(config[k]) - b.lo) / b.width() : 0.0;
  }
  return u;
}

Configuration ConfigurationObjective::from_unit(std::span<const double> unit) const {
  Configuration c(unit.size());
  for (std::size_t k = 0; k < c.size(); ++k) {
    const Interval& b = bounds_[k];
    const double u = std::clamp(unit[k], 0.0, 1.0);
    // Hit the upper bound exactly at u == 1.
    c[k] = u == 1.0 ? b.hi : b.lo + u * b.width();
  }
  return c;
}

OptResult make_result(const ReconfigProblem& problem, std::span<const double> config,
                      int evals_used, std::vector<double> per_start_values) {
  AppliedConfiguration applied = apply_configuration(problem.scene, problem.mode, config);
  QualityReport report = fuse_scene(applied.scene);
  const double value = objective_value(report, problem.objective);
  const bool feasible = is_feasible(report);
  return OptResult{std::move(applied.config), value,          feasible,
                   std::move(applied.scene),  std::move(report), evals_used,
                   std::move(per_start_values), applied.clamped};
}

namespace {

void validate(const ReconfigProblem& p) {
  if (p.starts < 1) throw Error(ErrorCode::InvalidArgument, "starts must be >= 1");
  if (p.max_evals < p.starts) {
    throw Error(ErrorCode::InvalidArgument, "max_evals must be >= starts");
  }
  if (!(p.objective.coverage_penalty > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "coverage penalty must be positive");
  }
}

// Initial simplex edge in normalized coordinates.
constexpr double kInitialStep = 0.25;

double unit_uniform(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

OptResult solve(const ReconfigProblem& problem) {
  validate(problem);
  const ConfigurationObjective objective(problem.scene, problem.mode, problem.objective);
  const std::size_t dim = objective.dimension();

  const int budget = problem.max_evals / problem.starts;
  const ObjectiveFn f = [&objective](std::span<const double> u) {
    return objective.normalized(u);
  };
  const ObjectiveFn excess = [&objective](std::span<const double> u) {
    return objective.coverage_excess(objective.from_unit(u));
  };

  std::vector<double> per_start;
  per_start.reserve(problem.starts);
  Configuration best_unit;
  double best_value = HUGE_VAL;
  int evals = 0;
  for (int s = 0; s < problem.starts; ++s) {
    Configuration x0;
    if (s == 0) {
      x0 = objective.to_unit(current_configuration(problem.scene, problem.mode));
    } else {
      std::seed_seq seq{static_cast<std::uint32_t>(problem.seed),
                        static_cast<std::uint32_t>(problem.seed >> 32),
                        static_cast<std::uint32_t>(s)};
      std::mt19937_64 rng(seq);
      x0.resize(dim);
      for (double& u : x0) u = unit_uniform(rng);
    }
    int used = 0;
    // Infeasible starts first chase coverage on a continuous measure; the
    // penalized objective is flat in that direction.
    if (excess(x0) > 0.0) {
      NelderMeadResult phase = nelder_mead(
          excess, x0,
          {.initial_step = kInitialStep, .max_evals = budget / 2, .stop_value = 0.0});
      used = phase.evals + 2;
      if (f(phase.x) <= f(x0)) x0 = std::move(phase.x);
    }
    NelderMeadResult r = nelder_mead(
        f, std::move(x0), {.initial_step = kInitialStep, .max_evals = std::max(budget - used, 1)});
    evals += used + r.evals;
    per_start.push_back(r.value);
    if (r.value < best_value || best_unit.empty()) {
      best_value = r.value;
      best_unit = std::move(r.x);
    }
  }
  return make_result(problem, objective.from_unit(best_unit), evals, std::move(per_start));
}

OptResult solve_minimax(ReconfigProblem problem) {
  problem.objective.kind = ObjectiveKind::Minimax;
  return solve(problem);
}

}  // namespace camnet
