#include "camnet/quality.hpp"

#include <cmath>
#include <numbers>

namespace camnet {

namespace {

void require_front(const ViewGeometry& geom) {
  if (!(geom.beta < std::numbers::pi / 2)) {
    throw Error(ErrorCode::BehindCamera, "behind camera plane");
  }
}

struct Radial {
  double k;   // K_r
  double dk;  // dK_r / d(r^2)
};

Radial radial_factor(double r2, const DistortionCoefficients& c) {
  const double num = 1.0 + r2 * (c.k1 + r2 * (c.k2 + r2 * c.k3));
  const double den = 1.0 + r2 * (c.k4 + r2 * (c.k5 + r2 * c.k6));
  if (std::abs(den) < 1e-12) {
    throw Error(ErrorCode::SingularDistortion, "distortion model singular");
  }
  const double dnum = c.k1 + r2 * (2.0 * c.k2 + 3.0 * r2 * c.k3);
  const double dden = c.k4 + r2 * (2.0 * c.k5 + 3.0 * r2 * c.k6);
  return {num / den, (dnum * den - num * dden) / (den * den)};
}

}  // namespace

double perspective_quality(const ViewGeometry& geom, const CameraIntrinsics& intr) {
  require_front(geom);
  return 2.0 * geom.distance * std::cos(geom.beta) * std::tan(intr.half_angle()) /
         intr.resolution();
}

Eigen::Vector2d distort(const Eigen::Vector2d& p, const DistortionCoefficients& c) {
  const double x = p.x();
  const double y = p.y();
  const double r2 = x * x + y * y;
  const double k = radial_factor(r2, c).k;
  return {x * k + 2.0 * c.s1 * x * y + c.s2 * (r2 + 2.0 * x * x),
          y * k + c.s1 * (r2 + 2.0 * y * y) + 2.0 * c.s2 * x * y};
}

JacobianDiagonal distortion_jacobian(const Eigen::Vector2d& p,
                                     const DistortionCoefficients& c) {
  radial_factor(p.squaredNorm(), c);  // throws at a singular center point
  // Use the representable step (x+h)-(x-h) as the divisor so the rounding
  // of x +- h does not leak into the quotient.
  const double xp = p.x() + kJacobianStep;
  const double xm = p.x() - kJacobianStep;
  const double yp = p.y() + kJacobianStep;
  const double ym = p.y() - kJacobianStep;
  JacobianDiagonal j;
  j.dxp_dx = (distort({xp, p.y()}, c).x() - distort({xm, p.y()}, c).x()) / (xp - xm);
  j.dyp_dy = (distort({p.x(), yp}, c).y() - distort({p.x(), ym}, c).y()) / (yp - ym);
  return j;
}

Eigen::Matrix2d analytic_distortion_jacobian(const Eigen::Vector2d& p,
                                             const DistortionCoefficients& c) {
  const double x = p.x();
  const double y = p.y();
  const auto [k, dk] = radial_factor(x * x + y * y, c);
  const double cross = 2.0 * x * y * dk + 2.0 * c.s1 * x + 2.0 * c.s2 * y;
  Eigen::Matrix2d j;
  j(0, 0) = k + 2.0 * x * x * dk + 2.0 * c.s1 * y + 6.0 * c.s2 * x;
  j(0, 1) = cross;
  j(1, 0) = cross;
  j(1, 1) = k + 2.0 * y * y * dk + 6.0 * c.s1 * y + 2.0 * c.s2 * x;
  return j;
}

Eigen::Vector2d normalized_projection(const ViewGeometry& geom, const CameraIntrinsics& intr) {
  const double t = std::tan(geom.beta) / std::tan(intr.half_angle());
  return {t * std::cos(geom.gamma), t * std::sin(geom.gamma)};
}

double distortion_quality(const ViewGeometry& geom, const CameraIntrinsics& intr) {
  require_front(geom);
  const JacobianDiagonal j = distortion_jacobian(normalized_projection(geom, intr),
                                                 intr.distortion());
  return j.dxp_dx * j.dyp_dy;
}

QualityBreakdown pair_quality(const ViewGeometry& geom, const CameraIntrinsics& intr) {
  QualityBreakdown q;
  q.q_p = perspective_quality(geom, intr);
  q.q_d = distortion_quality(geom, intr);
  q.q_total = q.q_p * q.q_d;
  return q;
}

}  // namespace camnet
