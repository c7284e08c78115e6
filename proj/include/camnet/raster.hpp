#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "camnet/fusion.hpp"
#include "camnet/scene.hpp"

namespace camnet {

enum class PlaneAxis { X, Y, Z };

/// Axis-aligned sampling plane `axis = value` (mm).
struct PlaneSpec {
  PlaneAxis axis = PlaneAxis::Z;
  double value = 0.0;
};

/// Parses "z=0", "x=1500.5", ...
PlaneSpec parse_plane(std::string_view text);

/// Fused quality sampled at cell centers of an axis-aligned plane. Row-major
/// with row 0 / column 0 at the workspace min corner. Columns run along x
/// (y for x-planes); rows run along y for z-planes and along z otherwise.
/// Uncovered cells hold +inf.
struct QualityMapRaster {
  int width = 0;
  int height = 0;
  PlaneSpec plane;
  std::vector<double> cells;

  double at(int row, int col) const { return cells[static_cast<std::size_t>(row) * width + col]; }
};

/// Throws InvalidArgument for width/height < 2 or a plane outside the
/// workspace.
QualityMapRaster quality_map(const Scene& scene, PlaneSpec plane, int width, int height,
                             QualityComponent component = QualityComponent::Total);

/// World position of the center of cell (row, col).
Eigen::Vector3d cell_center(const Box& workspace, PlaneSpec plane, int width, int height,
                            int row, int col);

/// One line per row, comma separated, "inf" for uncovered cells.
std::string raster_to_csv(const QualityMapRaster& raster);

/// ASCII PGM (P2, maxval 255). Covered cells are scaled linearly on -fused_q
/// into [1, 255] so lower mm/px is lighter; uncovered cells are 0.
std::string raster_to_pgm(const QualityMapRaster& raster);

}  // namespace camnet
