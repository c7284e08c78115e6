#include "camnet/scene.hpp"

#include <cmath>
#include <numbers>
#include <set>

namespace camnet {

namespace {

bool finite3(const Eigen::Vector3d& v) { return v.allFinite(); }

std::string fmt_point(const Eigen::Vector3d& v) {
  return "(" + std::to_string(v.x()) + ", " + std::to_string(v.y()) + ", " +
         std::to_string(v.z()) + ")";
}

}  // namespace

bool DistortionCoefficients::is_zero() const {
  return k1 == 0.0 && k2 == 0.0 && k3 == 0.0 && k4 == 0.0 && k5 == 0.0 &&
         k6 == 0.0 && s1 == 0.0 && s2 == 0.0;
}

void validate_distortion(const DistortionCoefficients& c, double max_radius) {
  for (double v : {c.k1, c.k2, c.k3, c.k4, c.k5, c.k6, c.s1, c.s2}) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::SingularDistortion,
                  "distortion model singular: non-finite coefficient");
    }
  }
  constexpr int kSamples = 1024;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = max_radius * i / kSamples;
    const double r2 = r * r;
    const double den = 1.0 + r2 * (c.k4 + r2 * (c.k5 + r2 * c.k6));
    if (!(den > 0.0)) {
      throw Error(ErrorCode::SingularDistortion,
                  "distortion model singular: radial denominator " +
                      std::to_string(den) + " at r=" + std::to_string(r));
    }
  }
}

CameraIntrinsics::CameraIntrinsics(double half_angle, int resolution,
                                   DistortionCoefficients distortion)
    : half_angle_(half_angle), resolution_(resolution), distortion_(distortion) {
  if (!(half_angle > 0.0 && half_angle < std::numbers::pi / 2)) {
    throw Error(ErrorCode::InvalidArgument,
                "half angle must lie in (0, pi/2), got " + std::to_string(half_angle));
  }
  if (resolution < 1) {
    throw Error(ErrorCode::InvalidArgument,
                "resolution must be >= 1, got " + std::to_string(resolution));
  }
  validate_distortion(distortion_);
}

double Interval::clamp(double v) const {
  if (v < lo) return lo;
  if (v > hi) return hi;
  return v;
}

bool Box::contains(const Eigen::Vector3d& p) const {
  return (p.array() >= min.array()).all() && (p.array() <= max.array()).all();
}

Scene::Scene(std::vector<Camera> cameras, std::vector<Target> targets, Box workspace)
    : cameras_(std::move(cameras)), targets_(std::move(targets)), workspace_(workspace) {
  if (!finite3(workspace_.min) || !finite3(workspace_.max) ||
      !(workspace_.min.array() <= workspace_.max.array()).all()) {
    throw Error(ErrorCode::InvalidArgument, "workspace min must be <= max and finite");
  }
  if (cameras_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "scene needs at least one camera");
  }
  if (targets_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "scene needs at least one target");
  }
  std::set<std::string> ids;
  for (const auto& cam : cameras_) {
    if (!ids.insert(cam.id).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate camera id '" + cam.id + "'");
    }
    if (!finite3(cam.pose.position) || !std::isfinite(cam.pose.pan) ||
        !std::isfinite(cam.pose.tilt)) {
      throw Error(ErrorCode::InvalidArgument, "camera '" + cam.id + "' pose not finite");
    }
    if (!workspace_.contains(cam.pose.position)) {
      throw Error(ErrorCode::InvalidArgument,
                  "camera '" + cam.id + "' at " + fmt_point(cam.pose.position) +
                      " lies outside the workspace");
    }
    for (const auto& iv : {cam.bounds.pan, cam.bounds.tilt}) {
      if (iv && !(std::isfinite(iv->lo) && std::isfinite(iv->hi) && iv->lo <= iv->hi)) {
        throw Error(ErrorCode::InvalidArgument,
                    "camera '" + cam.id + "' has an empty angle bound");
      }
    }
  }
  ids.clear();
  for (const auto& t : targets_) {
    if (!ids.insert(t.id).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate target id '" + t.id + "'");
    }
    if (!finite3(t.position)) {
      throw Error(ErrorCode::InvalidArgument, "target '" + t.id + "' position not finite");
    }
    if (!workspace_.contains(t.position)) {
      throw Error(ErrorCode::InvalidArgument,
                  "target '" + t.id + "' at " + fmt_point(t.position) +
                      " lies outside the workspace");
    }
  }
}

Scene Scene::with_pose(std::size_t index, const CameraPose& pose) const {
  if (index >= cameras_.size()) {
    throw Error(ErrorCode::InvalidArgument, "camera index out of range");
  }
  if (!workspace_.contains(pose.position)) {
    throw Error(ErrorCode::InvalidArgument, "pose outside the workspace");
  }
  Scene out = *this;
  out.cameras_[index].pose = pose;
  return out;
}

Eigen::Vector3d optical_axis(const CameraPose& pose) {
  const double st = std::sin(pose.tilt);
  return {st * std::cos(pose.pan), st * std::sin(pose.pan), -std::cos(pose.tilt)};
}

CameraFrame camera_frame(const CameraPose& pose) {
  const double sp = std::sin(pose.pan);
  const double cp = std::cos(pose.pan);
  const double st = std::sin(pose.tilt);
  const double ct = std::cos(pose.tilt);
  CameraFrame f;
  f.axis = {st * cp, st * sp, -ct};
  f.x = {ct * cp, ct * sp, st};
  f.y = {sp, -cp, 0.0};
  return f;
}

ViewGeometry view_geometry(const CameraPose& pose, const Eigen::Vector3d& target) {
  const Eigen::Vector3d d = target - pose.position;
  const double dist = d.norm();
  if (!(dist > 1e-9)) {
    throw Error(ErrorCode::DegenerateGeometry,
                "degenerate geometry: target coincides with camera position");
  }
  const CameraFrame f = camera_frame(pose);
  const double along = d.dot(f.axis);
  const double a = d.dot(f.x);
  const double b = d.dot(f.y);
  const double across = std::hypot(a, b);

  ViewGeometry g;
  g.distance = dist;
  // atan2 keeps full precision near the axis, unlike acos of the dot product.
  g.beta = std::atan2(across, along);
  if (across <= 1e-12 * dist) {
    g.gamma = 0.0;
  } else {
    g.gamma = std::atan2(b, a);
    if (g.gamma == -std::numbers::pi) g.gamma = std::numbers::pi;
  }
  return g;
}

bool visibility(const ViewGeometry& geom, const CameraIntrinsics& intr) {
  return geom.beta <= intr.half_angle();
}

}  // namespace camnet
