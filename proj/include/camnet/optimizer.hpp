#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "camnet/fusion.hpp"
#include "camnet/objective.hpp"
#include "camnet/scene.hpp"

namespace camnet {

/// Ptz: mounts fixed, (pan, tilt) per camera are free.
/// Drone: axes fixed straight down, (x, y, z) per camera are free.
enum class Mode { Ptz, Drone };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

inline constexpr double kDroneMinHeight = 1000.0;  // mm

struct ReconfigProblem {
  Scene scene;
  Mode mode = Mode::Ptz;
  ObjectiveSpec objective;
  int starts = 16;
  std::uint64_t seed = 0;
  int max_evals = 64000;  ///< total over all starts
};

/// Flat decision vector: (pan, tilt) per camera for Ptz, (x, y, z) for Drone.
using Configuration = std::vector<double>;

std::size_t variables_per_camera(Mode mode);

/// Per-camera bounds with mode defaults filled in. Ptz defaults: pan in
/// [-pi, pi], tilt in [0, pi/2]. Drone defaults: the workspace box with
/// z raised to at least kDroneMinHeight. Throws InvalidArgument on empty
/// boxes, a drone floor below kDroneMinHeight, or boxes leaving the
/// workspace.
std::vector<CameraBounds> resolved_bounds(const Scene& scene, Mode mode);

/// Same bounds flattened in Configuration layout.
std::vector<Interval> variable_bounds(const Scene& scene, Mode mode);

Configuration current_configuration(const Scene& scene, Mode mode);

struct AppliedConfiguration {
  Scene scene;
  Configuration config;     ///< after clamping
  std::size_t clamped = 0;  ///< number of components moved onto a bound
};

/// Writes `config` into a copy of the scene, clamping each component to its
/// bound. Drone mode also forces tilt to zero. Throws on a length mismatch.
AppliedConfiguration apply_configuration(const Scene& scene, Mode mode,
                                         std::span<const double> config);

/// Scalarized objective over configurations, shared by solve and the grid
/// oracle. Works either on physical values or on [0,1]-normalized ones.
class ConfigurationObjective {
 public:
  ConfigurationObjective(const Scene& scene, Mode mode, ObjectiveSpec spec);

  std::size_t dimension() const { return bounds_.size(); }
  const std::vector<Interval>& bounds() const { return bounds_; }

  struct Evaluation {
    double value = 0.0;
    bool feasible = false;
  };

  double operator()(std::span<const double> config) const;
  double normalized(std::span<const double> unit) const;
  Evaluation evaluate(std::span<const double> config) const;

  /// Continuous coverage measure: for every target, the smallest angle
  /// (rad) by which it falls outside a camera cone, summed over targets.
  /// Zero exactly when every target is covered.
  double coverage_excess(std::span<const double> config) const;
  /// Angle by which each pair falls outside the cone, summed over all
  /// pairs. Zero when every camera sees every target.
  double pair_excess(std::span<const double> config) const;

  Configuration to_unit(std::span<const double> config) const;
  /// Clamps each component to [0,1] before mapping back.
  Configuration from_unit(std::span<const double> unit) const;

 private:
  std::vector<FusedValue> fused(std::span<const double> config) const;
  std::vector<CameraPose> clamped_poses(std::span<const double> config) const;

  const Scene* scene_;
  Mode mode_;
  ObjectiveSpec spec_;
  std::vector<Interval> bounds_;
};

struct OptResult {
  Configuration best_config;
  double best_value = 0.0;
  bool feasible = false;
  Scene best_scene;
  QualityReport report;  ///< at best_config
  int evals_used = 0;
  std::vector<double> per_start_values;
  std::size_t clamped = 0;
};

/// Builds an OptResult for `config`, recomputing the value from the full
/// report so best_value and feasible agree with it.
OptResult make_result(const ReconfigProblem& problem, std::span<const double> config,
                      int evals_used, std::vector<double> per_start_values);

/// Multi-start Nelder-Mead in normalized coordinates. Start 0 is the
/// scene's current configuration; start k > 0 is uniform in the box, drawn
/// from an mt19937_64 seeded by (seed, k). Deterministic for a fixed
/// problem. The lowest value wins, ties go to the lowest start index.
OptResult solve(const ReconfigProblem& problem);

/// solve() with the objective forced to Minimax.
OptResult solve_minimax(ReconfigProblem problem);

}  // namespace camnet
