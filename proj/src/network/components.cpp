#include "estmap/network/components.hpp"

#include <algorithm>
#include <cstdio>

namespace estmap::network {

std::string Share::percent() const {
  if (total <= 0) return "0.00%";
  // Hundredths of a percent, rounded half up, in integers.
  long long hundredths = (count * 20000 + total) / (2 * total);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%lld.%02lld%%", hundredths / 100, hundredths % 100);
  return buf;
}

std::vector<std::vector<std::size_t>> connected_components(const Graph& graph) {
  auto adj = graph.adjacency();
  std::vector<bool> seen(adj.size(), false);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < adj.size(); ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> comp;
    seen[start] = true;
    stack.push_back(start);
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      comp.push_back(v);
      for (auto w : adj[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

ComponentReport component_report(const Graph& graph, long long min_component_size) {
  ComponentReport r;
  r.min_component_size = min_component_size;
  r.n_nodes = static_cast<long long>(graph.node_count());
  r.n_ties = static_cast<long long>(graph.edge_count());
  r.total_weight = graph.total_weight();
  for (const auto& c : connected_components(graph)) {
    auto size = static_cast<long long>(c.size());
    ++r.n_components;
    if (size >= min_component_size) ++r.n_components_min;
    if (size >= min_component_size) r.giant_size = std::max(r.giant_size, size);
    if (size == 1) ++r.isolated_count;
  }
  r.giant_share = {r.giant_size, r.n_nodes};
  r.isolated_share = {r.isolated_count, r.n_nodes};
  return r;
}

std::string format_report_table(const std::vector<ComponentReport>& reports) {
  std::vector<std::vector<std::string>> rows = {
      {"window", "articles", "nodes", "ties", "components", "giant", "isolated"}};
  for (const auto& r : reports) {
    rows.push_back({r.window ? r.window->label() : "all", std::to_string(r.n_articles), std::to_string(r.n_nodes),
                    std::to_string(r.n_ties), std::to_string(r.n_components_min),
                    std::to_string(r.giant_size) + " (" + r.giant_share.percent() + ")",
                    std::to_string(r.isolated_count) + " (" + r.isolated_share.percent() + ")"});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
  }
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i == 0) {
        out += row[i] + std::string(width[i] - row[i].size(), ' ');
      } else {
        out += "  " + std::string(width[i] - row[i].size(), ' ') + row[i];
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace estmap::network
