#include "estmap/overlay/density.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "estmap/util/error.hpp"
#include "estmap/util/numfmt.hpp"

namespace estmap::overlay {

double DensityGrid::mass() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * cell_width() * cell_height();
}

std::string DensityGrid::to_text() const {
  std::string out = "# rows cols x0 y0 x1 y1 bandwidth\n";
  out += std::to_string(rows) + " " + std::to_string(cols) + " " + numfmt::shortest(x0) + " " + numfmt::shortest(y0) +
         " " + numfmt::shortest(x1) + " " + numfmt::shortest(y1) + " " + numfmt::shortest(bandwidth) + "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c) out += ' ';
      out += numfmt::shortest(at(r, c));
    }
    out += '\n';
  }
  return out;
}

DensityGrid density_map(const std::vector<network::Point>& points, const std::vector<double>& weights,
                        std::optional<double> bandwidth, std::size_t resolution) {
  if (points.size() != weights.size()) throw InputError("one weight per point is required");
  if (resolution < 2) throw InputError("grid resolution must be at least 2");
  if (bandwidth && !(*bandwidth > 0.0)) throw InputError("bandwidth must be positive");
  for (double w : weights) {
    if (!(w >= 0.0)) throw InputError("weights must be non-negative");
  }
  DensityGrid g;
  g.rows = g.cols = resolution;
  g.values.assign(resolution * resolution, 0.0);
  if (points.empty()) {
    g.bandwidth = bandwidth.value_or(1.0);
    g.x1 = g.y1 = 1.0;
    return g;
  }
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  for (const auto& p : points) {
    x0 = std::min(x0, p.x);
    y0 = std::min(y0, p.y);
    x1 = std::max(x1, p.x);
    y1 = std::max(y1, p.y);
  }
  double extent = std::max(x1 - x0, y1 - y0);
  const double h = bandwidth.value_or(extent > 0.0 ? 0.05 * extent : 1.0);
  g.bandwidth = h;
  g.x0 = x0 - 5 * h;
  g.y0 = y0 - 5 * h;
  g.x1 = x1 + 5 * h;
  g.y1 = y1 + 5 * h;
  const double cw = g.cell_width(), ch = g.cell_height();
  const double norm = 1.0 / (2.0 * std::numbers::pi * h * h);
  const double inv2h2 = 1.0 / (2.0 * h * h);
  // Separable kernel: exp(-(dx^2 + dy^2)/2h^2) = ex(dx) * ey(dy).
  std::vector<double> ex(resolution), ey(resolution);
  for (std::size_t k = 0; k < points.size(); ++k) {
    if (weights[k] == 0.0) continue;
    for (std::size_t c = 0; c < resolution; ++c) {
      double dx = g.x0 + (static_cast<double>(c) + 0.5) * cw - points[k].x;
      ex[c] = std::exp(-dx * dx * inv2h2);
    }
    for (std::size_t r = 0; r < resolution; ++r) {
      double dy = g.y0 + (static_cast<double>(r) + 0.5) * ch - points[k].y;
      ey[r] = std::exp(-dy * dy * inv2h2);
    }
    const double scale = weights[k] * norm;
    for (std::size_t r = 0; r < resolution; ++r) {
      double* row = &g.values[r * resolution];
      const double ry = scale * ey[r];
      for (std::size_t c = 0; c < resolution; ++c) row[c] += ry * ex[c];
    }
  }
  return g;
}

DensityGrid density_map(const OverlayFrame& frame, const Basemap& basemap, std::optional<double> bandwidth,
                        std::size_t resolution) {
  if (frame.basemap_id != basemap.id) throw InputError("frame was projected on a different basemap");
  std::vector<network::Point> pts;
  std::vector<double> w;
  for (const auto& node : basemap.nodes) {
    pts.push_back({node.x, node.y});
    auto it = frame.counts.find(node.code);
    w.push_back(it == frame.counts.end() ? 0.0 : static_cast<double>(it->second));
  }
  return density_map(pts, w, bandwidth, resolution);
}

}  // namespace estmap::overlay
