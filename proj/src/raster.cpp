#include "camnet/raster.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>

#include "camnet/format.hpp"

namespace camnet {

namespace {

// (column axis, row axis) for a plane.
std::pair<int, int> plane_axes(PlaneAxis axis) {
  switch (axis) {
    case PlaneAxis::X:
      return {1, 2};
    case PlaneAxis::Y:
      return {0, 2};
    case PlaneAxis::Z:
      break;
  }
  return {0, 1};
}

int axis_index(PlaneAxis axis) {
  return axis == PlaneAxis::X ? 0 : axis == PlaneAxis::Y ? 1 : 2;
}

}  // namespace

PlaneSpec parse_plane(std::string_view text) {
  const auto fail = [&] {
    return Error(ErrorCode::InvalidArgument,
                 "bad plane '" + std::string(text) + "' (expected x=V, y=V or z=V)");
  };
  if (text.size() < 3 || text[1] != '=') throw fail();
  PlaneSpec p;
  switch (text[0]) {
    case 'x': case 'X': p.axis = PlaneAxis::X; break;
    case 'y': case 'Y': p.axis = PlaneAxis::Y; break;
    case 'z': case 'Z': p.axis = PlaneAxis::Z; break;
    default: throw fail();
  }
  const std::string_view num = text.substr(2);
  const auto res = std::from_chars(num.data(), num.data() + num.size(), p.value);
  if (res.ec != std::errc{} || res.ptr != num.data() + num.size() || !std::isfinite(p.value)) {
    throw fail();
  }
  return p;
}

Eigen::Vector3d cell_center(const Box& ws, PlaneSpec plane, int width, int height, int row,
                            int col) {
  const auto [ca, ra] = plane_axes(plane.axis);
  Eigen::Vector3d p;
  p[axis_index(plane.axis)] = plane.value;
  p[ca] = ws.min[ca] + (col + 0.5) * (ws.max[ca] - ws.min[ca]) / width;
  p[ra] = ws.min[ra] + (row + 0.5) * (ws.max[ra] - ws.min[ra]) / height;
  return p;
}

QualityMapRaster quality_map(const Scene& scene, PlaneSpec plane, int width, int height,
                             QualityComponent component) {
  if (width < 2 || height < 2) {
    throw Error(ErrorCode::InvalidArgument, "raster grid must be at least 2x2");
  }
  const Box& ws = scene.workspace();
  const int a = axis_index(plane.axis);
  if (plane.value < ws.min[a] || plane.value > ws.max[a]) {
    throw Error(ErrorCode::InvalidArgument,
                "plane " + format_number(plane.value) + " lies outside the workspace");
  }
  QualityMapRaster r;
  r.width = width;
  r.height = height;
  r.plane = plane;
  r.cells.reserve(static_cast<std::size_t>(width) * height);
  for (int row = 0; row < height; ++row) {
    for (int col = 0; col < width; ++col) {
      const Eigen::Vector3d p = cell_center(ws, plane, width, height, row, col);
      r.cells.push_back(fuse_point(scene, p, component).fused_q);
    }
  }
  return r;
}

std::string raster_to_csv(const QualityMapRaster& r) {
  std::string out;
  for (int row = 0; row < r.height; ++row) {
    for (int col = 0; col < r.width; ++col) {
      if (col) out += ',';
      out += format_number(r.at(row, col));
    }
    out += '\n';
  }
  return out;
}

std::string raster_to_pgm(const QualityMapRaster& r) {
  double lo = HUGE_VAL;
  double hi = -HUGE_VAL;
  for (double v : r.cells) {
    if (std::isfinite(v)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  std::string out = "P2\n" + std::to_string(r.width) + " " + std::to_string(r.height) + "\n255\n";
  for (int row = 0; row < r.height; ++row) {
    for (int col = 0; col < r.width; ++col) {
      const double v = r.at(row, col);
      int level = 0;
      if (std::isfinite(v)) {
        level = hi > lo ? 1 + static_cast<int>(std::lround(254.0 * (hi - v) / (hi - lo))) : 255;
      }
      if (col) out += ' ';
      out += std::to_string(level);
    }
    out += '\n';
  }
  return out;
}

}  // namespace camnet
