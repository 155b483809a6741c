#pragma once

#include <optional>
#include <string>
#include <vector>

#include "estmap/network/graph.hpp"

namespace estmap::network {

/// count / total kept exactly; display rounds half up to two decimals.
struct Share {
  long long count = 0;
  long long total = 0;

  double value() const { return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total); }
  /// "50.74%"; "0.00%" when total is 0.
  std::string percent() const;
};

struct ComponentReport {
  std::optional<Window> window;
  long long n_articles = 0;
  long long n_nodes = 0;
  long long n_ties = 0;         // distinct edges
  long long total_weight = 0;   // sum of edge weights
  long long n_components = 0;   // every component, singletons included
  long long n_components_min = 0;  // components with at least min_component_size nodes
  long long min_component_size = 4;
  long long giant_size = 0;  // largest component, 0 when none reaches min_component_size
  Share giant_share;
  long long isolated_count = 0;
  Share isolated_share;
};

/// Components as sorted node lists, ordered by their smallest node.
std::vector<std::vector<std::size_t>> connected_components(const Graph& graph);

ComponentReport component_report(const Graph& graph, long long min_component_size = 4);

/// Aligned plain-text table, one row per report.
std::string format_report_table(const std::vector<ComponentReport>& reports);

}  // namespace estmap::network
