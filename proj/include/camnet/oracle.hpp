#pragma once

#include <cstddef>
#include <cstdint>

#include "camnet/optimizer.hpp"

namespace camnet {

struct GridSpec {
  int points_per_dimension = 15;
  std::size_t max_vertices = 10'000'000;
};

struct GridResult {
  OptResult result;
  std::size_t grid_size = 0;
  /// Largest objective change between axis-adjacent vertices, taken over
  /// pairs where both vertices are feasible (over all pairs when no such
  /// pair exists). Bounds how much a continuous optimum can undercut the
  /// best vertex.
  double lipschitz_slack = 0.0;
};

/// Vertex count points^dims, saturating at SIZE_MAX.
std::size_t grid_size(int points_per_dimension, std::size_t dims);

/// Exhaustive evaluation on a regular grid spanning the problem bounds
/// (endpoints included). Lowest value wins, ties go to the first vertex in
/// row-major order with the last variable fastest. Throws InvalidArgument
/// for fewer than 2 points and GridTooLarge above the cap.
GridResult grid_search(const ReconfigProblem& problem, const GridSpec& grid);

struct ErrorTrialStats {
  int trials = 0;
  double bound = 0.0;  ///< pair quality Q at the target, mm
  /// Endpoint position error eps >= Q, counted per endpoint (2 per trial).
  int position_violations = 0;
  /// Length error |l - l'| >= 2Q, counted per trial.
  int length_violations = 0;
  double max_ratio = 0.0;         ///< max eps / Q over endpoints
  double ratio_q99 = 0.0;         ///< 0.99 quantile of eps / Q over endpoints
  double max_length_ratio = 0.0;  ///< max |l - l'| / (2Q)
  double mean_length_error = 0.0;
  double mean_position_error = 0.0;
};

/// One quantized measurement of a segment on the horizontal plane through
/// its midpoint.
struct SegmentMeasurement {
  double true_length = 0.0;
  double measured_length = 0.0;
  double endpoint_error[2] = {0.0, 0.0};
};

/// Continuous pixel coordinates of a world point: distorted normalized
/// coordinates scaled by w/2, principal point at (0, 0). Pixel centers sit
/// on integer coordinates.
Eigen::Vector2d project_to_pixel(const Camera& camera, const Eigen::Vector3d& point);

/// Back-projects a pixel onto the plane z = plane_z. Undistortion is solved
/// by Newton iteration on the full Jacobian.
Eigen::Vector3d unproject_to_plane(const Camera& camera, const Eigen::Vector2d& pixel,
                                   double plane_z);

SegmentMeasurement measure_segment(const Camera& camera, const Eigen::Vector3d& a,
                                   const Eigen::Vector3d& b);

/// Randomized quantization trials for one camera/target pair. Each trial
/// lays a segment of `segment_length` mm on the horizontal plane through
/// the target with uniform orientation and its midpoint shifted by a
/// uniform sub-pixel offset (up to half a pixel footprint per axis), then
/// rounds both endpoint projections to the pixel grid and back-projects
/// them. Throws NotVisible if the camera does not see the target.
ErrorTrialStats simulate_quantization_error(const Camera& camera, const Target& target,
                                            double segment_length, int trials,
                                            std::uint64_t seed);

}  // namespace camnet
