#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "camnet/fusion.hpp"
#include "support.hpp"

using namespace camnet;
using namespace camnet::testing;

namespace {

std::vector<Contribution> random_contributions(std::mt19937_64& rng, int n) {
  std::vector<Contribution> c;
  for (int i = 0; i < n; ++i) c.push_back({uniform(rng, 0.1, 50.0), rng() % 4 != 0});
  return c;
}

// Direct harmonic sum, the reference for fuse_target.
double harmonic(const std::vector<Contribution>& c) {
  double s = 0.0;
  for (const auto& x : c)
    if (x.visible) s += 1.0 / x.quality;
  return s > 0 ? 1.0 / s : kUncovered;
}

}  // namespace

TEST_CASE("fuse_target examples") {
  const std::vector<Contribution> one{{2.0, true}};
  CHECK(fuse_target(one).fused_q == 2.0);
  CHECK(fuse_target(one).covered);

  const std::vector<Contribution> two{{1.0, true}, {1.0, true}};
  CHECK(fuse_target(two).fused_q == 0.5);

  const std::vector<Contribution> hidden{{2.0, true}, {5.0, false}};
  CHECK(fuse_target(hidden).fused_q == 2.0);

  const std::vector<Contribution> none{{2.0, false}};
  const FusedValue f = fuse_target(none);
  CHECK_FALSE(f.covered);
  CHECK(std::isinf(f.fused_q));
  CHECK(f.fused_q > 0);

  const std::vector<Contribution> empty;
  CHECK_FALSE(fuse_target(empty).covered);
}

TEST_CASE("fuse_target rejects nonpositive visible qualities") {
  const std::vector<Contribution> zero{{0.0, true}};
  try {
    fuse_target(zero);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonpositiveQuality);
    CHECK(std::string(e.what()).find("nonpositive quality") != std::string::npos);
  }
  const std::vector<Contribution> hidden_zero{{-1.0, false}, {3.0, true}};
  CHECK(fuse_target(hidden_zero).fused_q == 3.0);
}

TEST_CASE("fusion algebra properties") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 8);
    auto c = random_contributions(rng, n);
    const FusedValue f = fuse_target(c);
    CHECK(f.covered == std::any_of(c.begin(), c.end(), [](auto& x) { return x.visible; }));
    if (!f.covered) continue;
    CHECK(std::abs(f.fused_q - harmonic(c)) <= 1e-14 * f.fused_q);

    double min_q = kUncovered;
    for (const auto& x : c)
      if (x.visible) min_q = std::min(min_q, x.quality);
    CHECK(f.fused_q <= min_q);

    auto more = c;
    more.push_back({uniform(rng, 0.1, 50.0), true});
    CHECK(fuse_target(more).fused_q < f.fused_q);

    auto shuffled = c;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(std::abs(fuse_target(shuffled).fused_q - f.fused_q) <= 4e-16 * f.fused_q);

    const double scale = uniform(rng, 0.1, 10.0);
    auto scaled = c;
    for (auto& x : scaled) x.quality *= scale;
    CHECK(std::abs(fuse_target(scaled).fused_q - scale * f.fused_q) <= 1e-14 * scale * f.fused_q);
  }
}

TEST_CASE("n equal contributors give Q/n") {
  for (int n = 1; n <= 12; ++n) {
    for (double q : {1.0, 3.0, 7.3, 0.123}) {
      const std::vector<Contribution> c(n, {q, true});
      const double got = fuse_target(c).fused_q;
      CHECK(std::abs(got - q / n) <= 2 * std::numeric_limits<double>::epsilon() * (q / n));
    }
  }
}

TEST_CASE("fuse_scene") {
  SUBCASE("single on-axis pair") {
    const Scene s = downward_scene();
    const QualityReport r = fuse_scene(s);
    REQUIRE(r.pairs.size() == 1);
    REQUIRE(r.targets.size() == 1);
    const QualityBreakdown q =
        pair_quality(view_geometry(s.cameras()[0].pose, s.targets()[0]), s.cameras()[0].intrinsics);
    CHECK(r.targets[0].covered);
    CHECK(r.targets[0].fused_q == q.q_total);
    CHECK(r.targets[0].target_id == "t0");
  }
  SUBCASE("target outside every cone") {
    const Scene s({make_camera("c", {0, 0, 3000})},
                  {make_target("in", {0, 0, 0}), make_target("out", {3900, 0, 0})},
                  {{-4000, -4000, 0}, {4000, 4000, 3000}});
    const QualityReport r = fuse_scene(s);
    CHECK(r.targets[0].covered);
    CHECK_FALSE(r.targets[1].covered);
    CHECK(std::isinf(r.targets[1].fused_q));
    CHECK_FALSE(r.pair(0, 1).visible);
    CHECK(r.pair(0, 1).quality.has_value());
  }
  SUBCASE("behind the camera plane records no quality") {
    const Scene s({make_camera("c", {0, 0, 1000})}, {make_target("up", {0, 0, 2000})},
                  {{-1, -1, 0}, {1, 1, 3000}});
    const QualityReport r = fuse_scene(s);
    CHECK_FALSE(r.pair(0, 0).visible);
    CHECK_FALSE(r.pair(0, 0).quality.has_value());
    CHECK(r.pair(0, 0).error == "behind camera plane");
    CHECK_FALSE(r.targets[0].covered);
  }
  SUBCASE("adding a camera that sees the target lowers fused_q") {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 50; ++i) {
      const Scene base = random_room_scene(rng(), 2, 3);
      const QualityReport before = fuse_scene(base);
      auto cams = base.cameras();
      const Target& t = base.targets()[0];
      cams.push_back(make_camera("extra", {t.position.x(), t.position.y(), 2000}, 0, 0, 0.6));
      const QualityReport after = fuse_scene(Scene(cams, base.targets(), base.workspace()));
      CHECK(after.targets[0].covered);
      CHECK(after.targets[0].fused_q < before.targets[0].fused_q);
      const double q_extra = after.pair(cams.size() - 1, 0).quality->q_total;
      const double expected = before.targets[0].covered
                                  ? 1.0 / (1.0 / before.targets[0].fused_q + 1.0 / q_extra)
                                  : q_extra;
      CHECK(after.targets[0].fused_q == doctest::Approx(expected).epsilon(1e-12));
      for (std::size_t j = 1; j < base.targets().size(); ++j) {
        CHECK(after.targets[j].fused_q <= before.targets[j].fused_q);
      }
    }
  }
  SUBCASE("camera order does not matter") {
    const Scene s = random_room_scene(12, 4, 6);
    auto cams = s.cameras();
    std::reverse(cams.begin(), cams.end());
    const QualityReport a = fuse_scene(s);
    const QualityReport b = fuse_scene(Scene(cams, s.targets(), s.workspace()));
    for (std::size_t j = 0; j < a.targets.size(); ++j) {
      CHECK(a.targets[j].covered == b.targets[j].covered);
      if (a.targets[j].covered) {
        CHECK(a.targets[j].fused_q == doctest::Approx(b.targets[j].fused_q).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("fuse_targets matches fuse_scene") {
  const Scene s = random_room_scene(77, 3, 5);
  std::vector<CameraPose> poses;
  for (const auto& c : s.cameras()) poses.push_back(c.pose);
  const auto fast = fuse_targets(s, poses);
  const QualityReport full = fuse_scene(s);
  for (std::size_t j = 0; j < fast.size(); ++j) {
    CHECK(fast[j].covered == full.targets[j].covered);
    CHECK(fast[j].fused_q == full.targets[j].fused_q);
  }
  poses.pop_back();
  CHECK_THROWS_AS(fuse_targets(s, poses), Error);
}

TEST_CASE("fuse_point components") {
  DistortionCoefficients d;
  d.k1 = 0.2;
  const Scene s = downward_scene(d);
  const Eigen::Vector3d p(1000, 500, 0);
  const double total = fuse_point(s, p).fused_q;
  const double qp = fuse_point(s, p, QualityComponent::Perspective).fused_q;
  const double qd = fuse_point(s, p, QualityComponent::Distortion).fused_q;
  CHECK(total == doctest::Approx(qp * qd).epsilon(1e-14));
  CHECK(qd > 1.0);
  CHECK(qp == doctest::Approx(6.0).epsilon(1e-12));
}
