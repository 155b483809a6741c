#include "estmap/overlay/render.hpp"

#include <algorithm>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "estmap/overlay/codes.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"
#include "estmap/util/numfmt.hpp"

namespace estmap::overlay {

namespace {

constexpr const char* kClusterPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b",
                                           "#e377c2", "#7f7f7f", "#bcbd22", "#17becf", "#393b79", "#637939"};

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string f2(double v) { return numfmt::fixed(v, 2); }

std::string node_colour(const BasemapNode& n) {
  if (n.branch) return std::string(branch_colour(*n.branch));
  constexpr auto k = std::size(kClusterPalette);
  return kClusterPalette[static_cast<std::size_t>(std::max(n.cluster, 0)) % k];
}

}  // namespace

std::string render_overlay_svg(const Basemap& basemap, const OverlayFrame& frame, std::size_t sequence,
                               const RenderOptions& options) {
  if (frame.basemap_id != basemap.id) throw InputError("frame was projected on a different basemap");
  double x0 = 0, y0 = 0, x1 = 1, y1 = 1;
  if (!basemap.nodes.empty()) {
    x0 = y0 = std::numeric_limits<double>::infinity();
    x1 = y1 = -x0;
    for (const auto& n : basemap.nodes) {
      x0 = std::min(x0, n.x);
      y0 = std::min(y0, n.y);
      x1 = std::max(x1, n.x);
      y1 = std::max(y1, n.y);
    }
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double scale = (std::min(options.width, options.height) - 2 * options.margin) / span;
  auto px = [&](double x) { return options.margin + (x - x0) * scale; };
  auto py = [&](double y) { return options.margin + (y - y0) * scale; };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + f2(options.width) + "\" height=\"" +
         f2(options.height) + "\" viewBox=\"0 0 " + f2(options.width) + " " + f2(options.height) + "\">\n";
  out += "<desc>frame " + std::to_string(sequence) + " " + (frame.window ? frame.window->label() : "all") + "</desc>\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + f2(options.width) + "\" height=\"" + f2(options.height) +
         "\" fill=\"white\"/>\n<g stroke=\"#cccccc\">\n";
  for (const auto& e : basemap.display_edges()) {
    const auto& a = basemap.nodes[e.i];
    const auto& b = basemap.nodes[e.j];
    out += "<line x1=\"" + f2(px(a.x)) + "\" y1=\"" + f2(py(a.y)) + "\" x2=\"" + f2(px(b.x)) + "\" y2=\"" +
           f2(py(b.y)) + "\" stroke-width=\"" + f2(0.2 + e.s) + "\"/>\n";
  }
  out += "</g>\n<g stroke=\"#333333\" stroke-width=\"0.3\" fill-opacity=\"0.75\">\n";
  for (const auto& n : basemap.nodes) {
    auto it = frame.sizes.find(n.code);
    double r = it == frame.sizes.end() ? 0.0 : it->second;
    out += "<circle cx=\"" + f2(px(n.x)) + "\" cy=\"" + f2(py(n.y)) + "\" r=\"" + f2(r) + "\" fill=\"" +
           node_colour(n) + "\"><title>" + xml_escape(n.label) + "</title></circle>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string frame_to_json(const OverlayFrame& frame, std::size_t sequence) {
  nlohmann::ordered_json j;
  j["basemap"] = frame.basemap_id;
  j["scheme"] = to_string(frame.scheme);
  j["window"] = frame.window ? frame.window->label() : "all";
  j["sequence"] = sequence;
  j["size_rule"] = to_string(frame.rule);
  j["occurrences"] = frame.occurrences;
  j["filtered"] = frame.filtered;
  j["counts"] = frame.counts;
  j["sizes"] = frame.sizes;
  auto& um = j["unmatched"] = nlohmann::ordered_json::array();
  for (const auto& [code, n] : frame.unmatched) um.push_back({{"code", code}, {"count", n}});
  return j.dump(1) + "\n";
}

std::vector<std::filesystem::path> animate_frames(const Basemap& basemap, const std::vector<OverlayFrame>& frames,
                                                  const std::filesystem::path& dir, const RenderOptions& options) {
  for (const auto& f : frames) {
    if (f.basemap_id != basemap.id) {
      throw InputError("frames mix basemaps: '" + f.basemap_id + "' and '" + basemap.id + "'");
    }
  }
  std::vector<std::filesystem::path> out;
  for (std::size_t k = 0; k < frames.size(); ++k) {
    char stem[16];
    std::snprintf(stem, sizeof stem, "%03zu", k);
    auto svg = dir / (std::string(stem) + ".svg");
    auto json = dir / (std::string(stem) + ".json");
    io::write_file_atomic(svg, render_overlay_svg(basemap, frames[k], k, options));
    io::write_file_atomic(json, frame_to_json(frames[k], k));
    out.push_back(svg);
    out.push_back(json);
  }
  return out;
}

}  // namespace estmap::overlay
