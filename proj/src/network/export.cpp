#include "estmap/network/export.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "estmap/util/error.hpp"
#include "estmap/util/numfmt.hpp"

namespace estmap::network {

namespace {

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

void require_coords(const Graph& graph, const std::vector<Point>& coords) {
  if (coords.size() != graph.node_count()) {
    throw InputError("layout has " + std::to_string(coords.size()) + " points for " +
                     std::to_string(graph.node_count()) + " nodes");
  }
}

std::string f2(double v) { return numfmt::fixed(v, 2); }

}  // namespace

std::string export_graphml(const Graph& graph, const std::vector<Point>& coords) {
  require_coords(graph, coords);
  std::string out =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      "  <key id=\"name\" for=\"node\" attr.name=\"name\" attr.type=\"string\"/>\n"
      "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n"
      "  <key id=\"kind\" for=\"node\" attr.name=\"kind\" attr.type=\"string\"/>\n"
      "  <key id=\"articles\" for=\"node\" attr.name=\"article_count\" attr.type=\"long\"/>\n"
      "  <key id=\"x\" for=\"node\" attr.name=\"x\" attr.type=\"double\"/>\n"
      "  <key id=\"y\" for=\"node\" attr.name=\"y\" attr.type=\"double\"/>\n"
      "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"long\"/>\n"
      "  <graph id=\"G\" edgedefault=\"undirected\">\n";
  const auto& nodes = graph.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    out += "    <node id=\"n" + std::to_string(i) + "\">";
    out += "<data key=\"name\">" + xml_escape(nodes[i].id) + "</data>";
    out += "<data key=\"label\">" + xml_escape(nodes[i].label) + "</data>";
    out += "<data key=\"kind\">" + std::string(to_string(nodes[i].kind)) + "</data>";
    out += "<data key=\"articles\">" + std::to_string(nodes[i].article_count) + "</data>";
    out += "<data key=\"x\">" + numfmt::shortest(coords[i].x) + "</data>";
    out += "<data key=\"y\">" + numfmt::shortest(coords[i].y) + "</data>";
    out += "</node>\n";
  }
  std::size_t k = 0;
  for (const auto& e : graph.edges()) {
    out += "    <edge id=\"e" + std::to_string(k++) + "\" source=\"n" + std::to_string(e.u) + "\" target=\"n" +
           std::to_string(e.v) + "\"><data key=\"weight\">" + std::to_string(e.weight) + "</data></edge>\n";
  }
  out += "  </graph>\n</graphml>\n";
  return out;
}

double node_radius(long long article_count, const SvgOptions& options) {
  double term = article_count > 0 ? std::log10(static_cast<double>(article_count) + 1.0) : 0.0;
  return options.min_radius + options.radius_per_log * term;
}

std::string export_network_svg(const Graph& graph, const std::vector<Point>& coords, const SvgOptions& options) {
  require_coords(graph, coords);
  double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
  if (!coords.empty()) {
    x0 = y0 = std::numeric_limits<double>::infinity();
    x1 = y1 = -x0;
    for (const auto& p : coords) {
      x0 = std::min(x0, p.x);
      y0 = std::min(y0, p.y);
      x1 = std::max(x1, p.x);
      y1 = std::max(y1, p.y);
    }
  }
  const double span = std::max({x1 - x0, y1 - y0, 1e-9});
  const double inner = std::min(options.width, options.height) - 2 * options.margin;
  const double scale = inner / span;
  auto px = [&](const Point& p) { return std::make_pair(options.margin + (p.x - x0) * scale, options.margin + (p.y - y0) * scale); };

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + f2(options.width) + "\" height=\"" +
         f2(options.height) + "\" viewBox=\"0 0 " + f2(options.width) + " " + f2(options.height) + "\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"" + f2(options.width) + "\" height=\"" + f2(options.height) +
         "\" fill=\"white\"/>\n";
  out += "<g stroke=\"#999999\" stroke-opacity=\"0.6\">\n";
  for (const auto& e : graph.edges()) {
    auto [ax, ay] = px(coords[e.u]);
    auto [bx, by] = px(coords[e.v]);
    out += "<line x1=\"" + f2(ax) + "\" y1=\"" + f2(ay) + "\" x2=\"" + f2(bx) + "\" y2=\"" + f2(by) +
           "\" stroke-width=\"" + f2(1.0 + std::log10(static_cast<double>(e.weight))) + "\"/>\n";
  }
  out += "</g>\n<g fill=\"#3b6ea5\" stroke=\"#ffffff\" stroke-width=\"0.5\">\n";
  const auto& nodes = graph.nodes();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    auto [cx, cy] = px(coords[i]);
    out += "<circle cx=\"" + f2(cx) + "\" cy=\"" + f2(cy) + "\" r=\"" + f2(node_radius(nodes[i].article_count, options)) +
           "\"><title>" + xml_escape(nodes[i].label) + "</title></circle>\n";
  }
  out += "</g>\n<g font-family=\"sans-serif\" font-size=\"10\" fill=\"#222222\">\n";
  for (auto i : options.labelled) {
    if (i >= nodes.size()) continue;
    auto [cx, cy] = px(coords[i]);
    double r = node_radius(nodes[i].article_count, options);
    out += "<text x=\"" + f2(cx + r + 2) + "\" y=\"" + f2(cy + 3) + "\">" + xml_escape(nodes[i].label) + "</text>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

}  // namespace estmap::network
