#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "estmap/overlay/basemap.hpp"
#include "estmap/overlay/frame.hpp"

namespace estmap::overlay {

inline constexpr std::string_view kPairConvention = "ordered pairs i != j";

/// sum over ordered pairs i != j of p_i p_j d_ij.
double rao_stirling(const std::vector<double>& p, const Matrix& d);

struct DiversityReport {
  std::optional<Window> window;
  CodeScheme scheme = CodeScheme::wos_category;
  std::vector<std::string> codes;   // codes with positive count, sorted
  std::vector<double> proportions;  // aligned with codes, sum 1
  double delta = 0.0;
  std::string convention{kPairConvention};
};

/// Diversity of a frame's matched counts with d = 1 - s from the basemap.
DiversityReport rao_stirling(const OverlayFrame& frame, const Basemap& basemap);

}  // namespace estmap::overlay
