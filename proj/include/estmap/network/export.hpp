#pragma once

#include <set>
#include <string>

#include "estmap/network/graph.hpp"
#include "estmap/network/layout.hpp"

namespace estmap::network {

std::string export_graphml(const Graph& graph, const std::vector<Point>& coords);

struct SvgOptions {
  double width = 800.0;
  double height = 800.0;
  double margin = 40.0;
  double min_radius = 2.0;
  /// Radius added per unit of log10(article_count + 1).
  double radius_per_log = 6.0;
  /// Nodes that get a text label.
  std::set<std::size_t> labelled;
};

/// Node radius is min_radius + radius_per_log * log10(article_count + 1).
double node_radius(long long article_count, const SvgOptions& options);

std::string export_network_svg(const Graph& graph, const std::vector<Point>& coords, const SvgOptions& options = {});

}  // namespace estmap::network
