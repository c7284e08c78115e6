#pragma once

#include <Eigen/Core>

#include "camnet/scene.hpp"

namespace camnet {

/// Single camera / single target sensing quality. Units are millimeters on
/// the target plane per pixel; lower is better.
struct QualityBreakdown {
  double q_p = 0.0;      ///< perspective factor, mm/px
  double q_d = 0.0;      ///< distortion factor, dimensionless
  double q_total = 0.0;  ///< q_p * q_d, mm/px
};

/// Diagonal entries of the distortion Jacobian.
struct JacobianDiagonal {
  double dxp_dx = 0.0;
  double dyp_dy = 0.0;
};

/// Step for the central-difference Jacobian on normalized coordinates.
inline constexpr double kJacobianStep = 1e-6;

/// 2*|op|*cos(beta)*tan(alpha)/w. Throws BehindCamera for beta >= pi/2.
double perspective_quality(const ViewGeometry& geom, const CameraIntrinsics& intr);

/// Forward Brown-Conrady map from undistorted to distorted normalized
/// coordinates. Throws SingularDistortion when the radial denominator is
/// within 1e-12 of zero.
Eigen::Vector2d distort(const Eigen::Vector2d& point, const DistortionCoefficients& coeffs);

/// Central finite differences of `distort` with step kJacobianStep. This is
/// the reference path used by distortion_quality.
JacobianDiagonal distortion_jacobian(const Eigen::Vector2d& point,
                                     const DistortionCoefficients& coeffs);

/// Closed-form full 2x2 Jacobian of `distort`.
Eigen::Matrix2d analytic_distortion_jacobian(const Eigen::Vector2d& point,
                                             const DistortionCoefficients& coeffs);

/// Normalized point (tan(beta)cos(gamma), tan(beta)sin(gamma)) / tan(alpha),
/// so the cone edge maps to unit radius.
Eigen::Vector2d normalized_projection(const ViewGeometry& geom, const CameraIntrinsics& intr);

/// Product of the diagonal Jacobian entries at the target's normalized
/// projection. Defined outside the cone too; visibility gating happens in
/// fusion.
double distortion_quality(const ViewGeometry& geom, const CameraIntrinsics& intr);

QualityBreakdown pair_quality(const ViewGeometry& geom, const CameraIntrinsics& intr);

}  // namespace camnet
