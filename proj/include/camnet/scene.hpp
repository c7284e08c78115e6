#pragma once

#include <Eigen/Core>

#include <optional>
#include <string>
#include <vector>

#include "camnet/error.hpp"

namespace camnet {

/// Brown-Conrady coefficients: rational radial k1..k6 and tangential s1, s2.
/// Normalized coordinates are scaled so the edge of the view cone sits at
/// unit radius.
struct DistortionCoefficients {
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  double k4 = 0.0;
  double k5 = 0.0;
  double k6 = 0.0;
  double s1 = 0.0;
  double s2 = 0.0;

  bool is_zero() const;
  bool is_radial_only() const { return s1 == 0.0 && s2 == 0.0; }

  friend bool operator==(const DistortionCoefficients&,
                         const DistortionCoefficients&) = default;
};

/// Throws SingularDistortion if any coefficient is non-finite or the radial
/// denominator 1 + k4 r^2 + k5 r^4 + k6 r^6 is not positive somewhere on
/// r in [0, max_radius] (checked by sampling).
void validate_distortion(const DistortionCoefficients& coeffs,
                         double max_radius = 1.0);

class CameraIntrinsics {
 public:
  /// half_angle in (0, pi/2) radians, resolution >= 1 pixels across the
  /// full cone diameter.
  CameraIntrinsics(double half_angle, int resolution,
                   DistortionCoefficients distortion = {});

  double half_angle() const { return half_angle_; }
  int resolution() const { return resolution_; }
  const DistortionCoefficients& distortion() const { return distortion_; }

  friend bool operator==(const CameraIntrinsics&,
                         const CameraIntrinsics&) = default;

 private:
  double half_angle_;
  int resolution_;
  DistortionCoefficients distortion_;
};

/// Mount position (mm) and pan/tilt (rad). Roll is always zero.
struct CameraPose {
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double pan = 0.0;
  double tilt = 0.0;

  friend bool operator==(const CameraPose&, const CameraPose&) = default;
};

/// Orthonormal camera frame. `axis` is the optical axis; `x` and `y` span
/// the image plane with y = axis × x.
struct CameraFrame {
  Eigen::Vector3d axis;
  Eigen::Vector3d x;
  Eigen::Vector3d y;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double clamp(double v) const;
  double width() const { return hi - lo; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

struct Box {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();

  bool contains(const Eigen::Vector3d& p) const;

  friend bool operator==(const Box&, const Box&) = default;
};

/// Optional per-camera limits for the reconfiguration variables. Missing
/// entries fall back to mode defaults.
struct CameraBounds {
  std::optional<Interval> pan;
  std::optional<Interval> tilt;
  std::optional<Eigen::Vector3d> position_min;
  std::optional<Eigen::Vector3d> position_max;

  friend bool operator==(const CameraBounds&, const CameraBounds&) = default;
};

struct Camera {
  std::string id;
  CameraIntrinsics intrinsics;
  CameraPose pose;
  CameraBounds bounds;

  friend bool operator==(const Camera&, const Camera&) = default;
};

struct Target {
  std::string id;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();

  friend bool operator==(const Target&, const Target&) = default;
};

/// Validated set of cameras and targets inside a workspace box.
class Scene {
 public:
  Scene(std::vector<Camera> cameras, std::vector<Target> targets, Box workspace);

  const std::vector<Camera>& cameras() const { return cameras_; }
  const std::vector<Target>& targets() const { return targets_; }
  const Box& workspace() const { return workspace_; }

  /// Copy with camera `index` moved to `pose`; the new position must stay
  /// inside the workspace.
  Scene with_pose(std::size_t index, const CameraPose& pose) const;

  friend bool operator==(const Scene&, const Scene&) = default;

 private:
  std::vector<Camera> cameras_;
  std::vector<Target> targets_;
  Box workspace_;
};

/// Angles of the camera-to-target ray.
struct ViewGeometry {
  double beta = 0.0;      ///< angle to the optical axis, [0, pi]
  double gamma = 0.0;     ///< azimuth in the image plane from camera x, (-pi, pi]
  double distance = 0.0;  ///< |p - o| in mm
};

/// pan=0, tilt=0 points straight down; pan rotates about world z and tilt
/// leans the axis toward the horizon.
Eigen::Vector3d optical_axis(const CameraPose& pose);

/// Rigid rotation Rz(pan) * Ry(-tilt) of the downward frame
/// {axis=-z, x=+x, y=-y}. The y axis stays horizontal for every pose.
CameraFrame camera_frame(const CameraPose& pose);

ViewGeometry view_geometry(const CameraPose& pose, const Eigen::Vector3d& target);
inline ViewGeometry view_geometry(const CameraPose& pose, const Target& target) {
  return view_geometry(pose, target.position);
}

/// Cone test; beta == alpha counts as visible.
bool visibility(const ViewGeometry& geom, const CameraIntrinsics& intr);

}  // namespace camnet
