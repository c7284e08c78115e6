#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "camnet/quality.hpp"
#include "camnet/scene.hpp"

namespace camnet {

inline constexpr double kUncovered = std::numeric_limits<double>::infinity();

struct Contribution {
  double quality = 0.0;  ///< Q of the pair, mm/px
  bool visible = false;
};

struct FusedValue {
  bool covered = false;
  double fused_q = kUncovered;  ///< +inf when no camera sees the target
};

/// Harmonic fusion 1 / sum(1/Q) over visible contributions. Throws
/// NonpositiveQuality if a visible Q is <= 0 (or NaN).
FusedValue fuse_target(std::span<const Contribution> contributions);

/// Everything computed for one (camera, target) pair. `quality` is absent
/// when the target is behind the camera plane or evaluation failed, in
/// which case `error` holds the reason and the pair does not contribute.
struct PairRecord {
  std::size_t camera = 0;
  std::size_t target = 0;
  std::optional<ViewGeometry> geometry;
  std::optional<QualityBreakdown> quality;
  bool visible = false;
  std::string error;
};

struct ContributorEntry {
  std::size_t camera = 0;
  double quality = 0.0;
  bool visible = false;
};

struct TargetFusion {
  std::string target_id;
  bool covered = false;
  double fused_q = kUncovered;
  std::vector<ContributorEntry> contributors;
};

struct QualityReport {
  std::size_t camera_count = 0;
  std::vector<PairRecord> pairs;  ///< camera-major: index = camera * N_t + target
  std::vector<TargetFusion> targets;

  const PairRecord& pair(std::size_t camera, std::size_t target) const {
    return pairs[camera * targets.size() + target];
  }
};

/// Evaluates one pair without throwing; failures land in PairRecord::error.
PairRecord evaluate_pair(const Camera& camera, const CameraPose& pose,
                         const Eigen::Vector3d& target);

QualityReport fuse_scene(const Scene& scene);

/// Fused values only, with camera poses overridden by `poses` (one per
/// camera). This is the optimizer's hot path.
std::vector<FusedValue> fuse_targets(const Scene& scene, std::span<const CameraPose> poses);

/// Which factor of the pair quality to fuse. Perspective and Distortion
/// isolate q_p and q_d for diagnostic maps; Total is the real metric.
enum class QualityComponent { Total, Perspective, Distortion };

/// Fused value at an arbitrary point for the scene's current poses.
FusedValue fuse_point(const Scene& scene, const Eigen::Vector3d& point,
                      QualityComponent component = QualityComponent::Total);

}  // namespace camnet
