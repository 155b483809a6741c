#include "estmap/network/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "estmap/util/error.hpp"

namespace estmap::network {

std::vector<long long> degree_centrality(const Graph& graph) {
  std::vector<long long> deg(graph.node_count(), 0);
  for (const auto& e : graph.edges()) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

TopCentral top_central(const Graph& graph, double share) {
  if (!(share > 0.0 && share <= 1.0)) throw InputError("centrality share must lie in (0, 1]");
  TopCentral out;
  auto deg = degree_centrality(graph);
  if (deg.empty()) return out;
  auto sorted = deg;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  auto rank = static_cast<std::size_t>(std::ceil(share * static_cast<double>(deg.size()) - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, deg.size());
  out.cutoff = sorted[rank - 1];
  if (out.cutoff == 0) {
    out.degenerate = true;
    return out;
  }
  for (std::size_t i = 0; i < deg.size(); ++i) {
    if (deg[i] >= out.cutoff) out.nodes.insert(i);
  }
  return out;
}

}  // namespace estmap::network
