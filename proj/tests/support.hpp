#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "camnet/scene.hpp"

namespace camnet::testing {

inline constexpr double kPi = std::numbers::pi;

inline Box room(double x = 5000, double y = 3000, double z = 3000) {
  return {{0, 0, 0}, {x, y, z}};
}

inline Camera make_camera(std::string id, Eigen::Vector3d position, double pan = 0.0,
                          double tilt = 0.0, double alpha = kPi / 4, int w = 1000,
                          DistortionCoefficients d = {}) {
  return Camera{std::move(id), CameraIntrinsics(alpha, w, d), CameraPose{position, pan, tilt}, {}};
}

inline Target make_target(std::string id, Eigen::Vector3d p) { return {std::move(id), p}; }

/// Camera at (0,0,3000) looking down over a floor that extends in all
/// directions.
inline Scene downward_scene(DistortionCoefficients d = {}, int w = 1000, double alpha = kPi / 4) {
  Box box{{-4000, -4000, 0}, {4000, 4000, 3000}};
  return Scene({make_camera("cam0", {0, 0, 3000}, 0, 0, alpha, w, d)},
               {make_target("t0", {0, 0, 0})}, box);
}

/// Uniform double in [lo, hi) from a 64-bit engine, independent of the
/// library's distribution implementation.
inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Random room scene: cameras on the 2.5 m ceiling of a 5 x 3 m room,
/// targets on the floor. Cameras start pointing down.
inline Scene random_room_scene(std::uint64_t seed, int cameras, int targets,
                               DistortionCoefficients d = {}, double alpha = 0.6, int w = 1000) {
  std::mt19937_64 rng(seed);
  const Box box{{0, 0, 0}, {5000, 3000, 2500}};
  std::vector<Camera> cams;
  for (int i = 0; i < cameras; ++i) {
    cams.push_back(make_camera("c" + std::to_string(i),
                               {uniform(rng, 0, 5000), uniform(rng, 0, 3000), 2500}, 0, 0,
                               alpha, w, d));
  }
  std::vector<Target> tgts;
  for (int j = 0; j < targets; ++j) {
    tgts.push_back(
        make_target("t" + std::to_string(j), {uniform(rng, 500, 4500), uniform(rng, 500, 2500), 0}));
  }
  return Scene(std::move(cams), std::move(tgts), box);
}

}  // namespace camnet::testing
