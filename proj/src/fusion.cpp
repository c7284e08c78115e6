#include "camnet/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace camnet {

FusedValue fuse_target(std::span<const Contribution> contributions) {
  // Neumaier-compensated sum of inverse qualities.
  double sum = 0.0;
  double carry = 0.0;
  double min_q = kUncovered;
  bool any = false;
  for (const auto& c : contributions) {
    if (!c.visible) continue;
    if (!(c.quality > 0.0)) {
      throw Error(ErrorCode::NonpositiveQuality,
                  "nonpositive quality " + std::to_string(c.quality));
    }
    min_q = std::min(min_q, c.quality);
    const double inv = 1.0 / c.quality;
    const double t = sum + inv;
    if (std::abs(sum) >= std::abs(inv)) {
      carry += (sum - t) + inv;
    } else {
      carry += (inv - t) + sum;
    }
    sum = t;
    any = true;
  }
  if (!any) return {};
  // The harmonic sum never exceeds its smallest term; the min repairs the
  // last-ulp rounding of 1/(1/q) for a lone contributor.
  return {true, std::min(1.0 / (sum + carry), min_q)};
}

PairRecord evaluate_pair(const Camera& camera, const CameraPose& pose,
                         const Eigen::Vector3d& target) {
  PairRecord rec;
  try {
    rec.geometry = view_geometry(pose, target);
    if (rec.geometry->beta >= std::numbers::pi / 2) {
      rec.error = "behind camera plane";
      return rec;
    }
    rec.quality = pair_quality(*rec.geometry, camera.intrinsics);
    rec.visible = visibility(*rec.geometry, camera.intrinsics);
    if (rec.visible && !(rec.quality->q_total > 0.0)) {
      rec.visible = false;
      rec.error = "nonpositive quality";
    }
  } catch (const Error& e) {
    rec.visible = false;
    rec.quality.reset();
    rec.error = e.what();
  }
  return rec;
}

namespace {

Contribution as_contribution(const PairRecord& rec,
                             QualityComponent component = QualityComponent::Total) {
  if (!rec.quality) return {0.0, false};
  switch (component) {
    case QualityComponent::Perspective:
      return {rec.quality->q_p, rec.visible};
    case QualityComponent::Distortion:
      return {rec.quality->q_d, rec.visible};
    case QualityComponent::Total:
      break;
  }
  return {rec.quality->q_total, rec.visible};
}

}  // namespace

QualityReport fuse_scene(const Scene& scene) {
  const auto& cams = scene.cameras();
  const auto& tgts = scene.targets();
  QualityReport report;
  report.camera_count = cams.size();
  report.pairs.reserve(cams.size() * tgts.size());
  for (std::size_t i = 0; i < cams.size(); ++i) {
    for (std::size_t j = 0; j < tgts.size(); ++j) {
      PairRecord rec = evaluate_pair(cams[i], cams[i].pose, tgts[j].position);
      rec.camera = i;
      rec.target = j;
      report.pairs.push_back(std::move(rec));
    }
  }
  report.targets.resize(tgts.size());
  std::vector<Contribution> contribs(cams.size());
  for (std::size_t j = 0; j < tgts.size(); ++j) {
    TargetFusion& tf = report.targets[j];
    tf.target_id = tgts[j].id;
    for (std::size_t i = 0; i < cams.size(); ++i) {
      const PairRecord& rec = report.pair(i, j);
      contribs[i] = as_contribution(rec);
      tf.contributors.push_back({i, contribs[i].quality, contribs[i].visible});
    }
    const FusedValue fv = fuse_target(contribs);
    tf.covered = fv.covered;
    tf.fused_q = fv.fused_q;
  }
  return report;
}

std::vector<FusedValue> fuse_targets(const Scene& scene, std::span<const CameraPose> poses) {
  const auto& cams = scene.cameras();
  const auto& tgts = scene.targets();
  if (poses.size() != cams.size()) {
    throw Error(ErrorCode::InvalidArgument, "pose count does not match camera count");
  }
  std::vector<FusedValue> out(tgts.size());
  std::vector<Contribution> contribs(cams.size());
  for (std::size_t j = 0; j < tgts.size(); ++j) {
    for (std::size_t i = 0; i < cams.size(); ++i) {
      contribs[i] = as_contribution(evaluate_pair(cams[i], poses[i], tgts[j].position));
    }
    out[j] = fuse_target(contribs);
  }
  return out;
}

FusedValue fuse_point(const Scene& scene, const Eigen::Vector3d& point,
                      QualityComponent component) {
  const auto& cams = scene.cameras();
  std::vector<Contribution> contribs(cams.size());
  for (std::size_t i = 0; i < cams.size(); ++i) {
    contribs[i] = as_contribution(evaluate_pair(cams[i], cams[i].pose, point), component);
  }
  return fuse_target(contribs);
}

}  // namespace camnet
