#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "estmap/overlay/basemap.hpp"
#include "estmap/overlay/frame.hpp"

namespace estmap::overlay {

struct RenderOptions {
  double width = 900.0;
  double height = 900.0;
  double margin = 40.0;
};

std::string render_overlay_svg(const Basemap& basemap, const OverlayFrame& frame, std::size_t sequence = 0,
                               const RenderOptions& options = {});
std::string frame_to_json(const OverlayFrame& frame, std::size_t sequence = 0);

/// Writes 000.svg, 000.json, 001.svg, ... into `dir`; returns the paths in
/// order. Every frame must come from `basemap`.
std::vector<std::filesystem::path> animate_frames(const Basemap& basemap, const std::vector<OverlayFrame>& frames,
                                                  const std::filesystem::path& dir,
                                                  const RenderOptions& options = {});

}  // namespace estmap::overlay
