#pragma once

#include <set>
#include <vector>

#include "estmap/network/graph.hpp"

namespace estmap::network {

/// Unweighted degree per node.
std::vector<long long> degree_centrality(const Graph& graph);

struct TopCentral {
  std::set<std::size_t> nodes;
  long long cutoff = 0;
  /// The node at the cut-off rank has degree 0, so nothing is selected.
  bool degenerate = false;
};

/// Nodes whose degree is at least that of the node at rank
/// ceil(share * n_nodes), ties included.
TopCentral top_central(const Graph& graph, double share = 0.05);

}  // namespace estmap::network
