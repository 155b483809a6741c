#pragma once

#include <optional>
#include <string>
#include <vector>

#include "estmap/network/layout.hpp"
#include "estmap/overlay/basemap.hpp"
#include "estmap/overlay/frame.hpp"

namespace estmap::overlay {

struct DensityGrid {
  std::size_t rows = 0;
  std::size_t cols = 0;
  double x0 = 0.0, y0 = 0.0, x1 = 0.0, y1 = 0.0;
  double bandwidth = 0.0;
  std::vector<double> values;  // row-major, row 0 at y0

  double cell_width() const { return cols ? (x1 - x0) / static_cast<double>(cols) : 0.0; }
  double cell_height() const { return rows ? (y1 - y0) / static_cast<double>(rows) : 0.0; }
  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
  /// Sum of cell values times cell area.
  double mass() const;
  /// Header line "rows cols x0 y0 x1 y1 bandwidth", then one line per row.
  std::string to_text() const;
};

inline constexpr std::size_t kDefaultResolution = 200;

/// Weighted Gaussian kernel density at cell centres. Bounds are the points'
/// box padded by five bandwidths. Without a bandwidth, 5% of the larger side
/// of the box is used (1 for a single point).
DensityGrid density_map(const std::vector<network::Point>& points, const std::vector<double>& weights,
                        std::optional<double> bandwidth = std::nullopt,
                        std::size_t resolution = kDefaultResolution);
DensityGrid density_map(const OverlayFrame& frame, const Basemap& basemap,
                        std::optional<double> bandwidth = std::nullopt,
                        std::size_t resolution = kDefaultResolution);

}  // namespace estmap::overlay
