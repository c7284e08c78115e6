#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "camnet/oracle.hpp"
#include "camnet/quality.hpp"

namespace camnet {

namespace {

double pixels_per_unit(const Camera& camera) { return 0.5 * camera.intrinsics.resolution(); }

Eigen::Vector2d undistort(const Eigen::Vector2d& distorted, const DistortionCoefficients& c) {
  if (c.is_zero()) return distorted;
  Eigen::Vector2d x = distorted;
  for (int it = 0; it < 100; ++it) {
    const Eigen::Vector2d residual = distort(x, c) - distorted;
    if (residual.lpNorm<Eigen::Infinity>() < 1e-15) break;
    const Eigen::Matrix2d j = analytic_distortion_jacobian(x, c);
    x -= j.partialPivLu().solve(residual);
  }
  return x;
}

}  // namespace

Eigen::Vector2d project_to_pixel(const Camera& camera, const Eigen::Vector3d& point) {
  const CameraFrame f = camera_frame(camera.pose);
  const Eigen::Vector3d d = point - camera.pose.position;
  const double z = d.dot(f.axis);
  if (!(z > 0.0)) throw Error(ErrorCode::BehindCamera, "behind camera plane");
  const double scale = 1.0 / (z * std::tan(camera.intrinsics.half_angle()));
  const Eigen::Vector2d normalized(d.dot(f.x) * scale, d.dot(f.y) * scale);
  return distort(normalized, camera.intrinsics.distortion()) * pixels_per_unit(camera);
}

Eigen::Vector3d unproject_to_plane(const Camera& camera, const Eigen::Vector2d& pixel,
                                   double plane_z) {
  const Eigen::Vector2d n =
      undistort(pixel / pixels_per_unit(camera), camera.intrinsics.distortion());
  const CameraFrame f = camera_frame(camera.pose);
  const double t = std::tan(camera.intrinsics.half_angle());
  const Eigen::Vector3d ray = f.axis + t * (n.x() * f.x + n.y() * f.y);
  const double along = (plane_z - camera.pose.position.z()) / ray.z();
  if (!std::isfinite(along) || !(along > 0.0)) {
    throw Error(ErrorCode::DegenerateGeometry, "degenerate geometry: ray misses the plane");
  }
  return camera.pose.position + along * ray;
}

SegmentMeasurement measure_segment(const Camera& camera, const Eigen::Vector3d& a,
                                   const Eigen::Vector3d& b) {
  const double plane_z = 0.5 * (a.z() + b.z());
  Eigen::Vector3d recovered[2];
  const Eigen::Vector3d ends[2] = {a, b};
  SegmentMeasurement m;
  for (int e = 0; e < 2; ++e) {
    const Eigen::Vector2d px = project_to_pixel(camera, ends[e]);
    const Eigen::Vector2d snapped(std::round(px.x()), std::round(px.y()));
    recovered[e] = unproject_to_plane(camera, snapped, plane_z);
    m.endpoint_error[e] = (recovered[e] - ends[e]).norm();
  }
  m.true_length = (b - a).norm();
  m.measured_length = (recovered[1] - recovered[0]).norm();
  return m;
}

ErrorTrialStats simulate_quantization_error(const Camera& camera, const Target& target,
                                            double segment_length, int trials,
                                            std::uint64_t seed) {
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be >= 1");
  if (!(segment_length > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "segment length must be positive");
  }
  const ViewGeometry geom = view_geometry(camera.pose, target);
  if (!visibility(geom, camera.intrinsics)) {
    throw Error(ErrorCode::NotVisible, "target not visible");
  }
  const QualityBreakdown q = pair_quality(geom, camera.intrinsics);
  const double bound = q.q_total;
  const double footprint = q.q_p;

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  std::mt19937_64 rng(seq);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  ErrorTrialStats stats;
  stats.trials = trials;
  stats.bound = bound;
  std::vector<double> ratios;
  ratios.reserve(2 * static_cast<std::size_t>(trials));
  double length_sum = 0.0;
  double position_sum = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double theta = 2.0 * std::numbers::pi * uniform();
    const double ox = (uniform() - 0.5) * footprint;
    const double oy = (uniform() - 0.5) * footprint;
    const Eigen::Vector3d mid = target.position + Eigen::Vector3d(ox, oy, 0.0);
    const Eigen::Vector3d half =
        0.5 * segment_length * Eigen::Vector3d(std::cos(theta), std::sin(theta), 0.0);
    const SegmentMeasurement m = measure_segment(camera, mid - half, mid + half);

    const double length_error = std::abs(m.true_length - m.measured_length);
    length_sum += length_error;
    if (length_error >= 2.0 * bound) ++stats.length_violations;
    stats.max_length_ratio = std::max(stats.max_length_ratio, length_error / (2.0 * bound));
    for (double eps : m.endpoint_error) {
      position_sum += eps;
      if (eps >= bound) ++stats.position_violations;
      ratios.push_back(eps / bound);
    }
  }
  std::sort(ratios.begin(), ratios.end());
  stats.max_ratio = ratios.back();
  const auto rank = static_cast<std::size_t>(std::ceil(0.99 * static_cast<double>(ratios.size())));
  stats.ratio_q99 = ratios[std::max<std::size_t>(rank, 1) - 1];
  stats.mean_length_error = length_sum / trials;
  stats.mean_position_error = position_sum / (2.0 * trials);
  return stats;
}

}  // namespace camnet
