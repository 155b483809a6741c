#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "estmap/records/record.hpp"

namespace estmap::geo {
class Gazetteer;
}

namespace estmap::network {

class AliasMap;

enum class NodeKind { city, org };
std::string_view to_string(NodeKind kind);

struct Node {
  std::string id;
  std::string label;
  NodeKind kind = NodeKind::org;
  long long article_count = 0;
};

/// Undirected edge between node indices, u < v.
struct Edge {
  std::size_t u = 0;
  std::size_t v = 0;
  long long weight = 1;
};

/// Simple undirected weighted graph: no self-loops, one edge per pair.
class Graph {
public:
  std::size_t add_node(std::string id, std::string label, NodeKind kind = NodeKind::org, long long article_count = 0);
  /// Adds `weight` to the (u, v) edge, creating it if needed.
  void add_edge(std::size_t u, std::size_t v, long long weight = 1);

  std::optional<std::size_t> find(const std::string& id) const;
  const std::vector<Node>& nodes() const { return nodes_; }
  std::vector<Node>& nodes() { return nodes_; }
  /// Sorted by (u, v).
  std::vector<Edge> edges() const;
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  long long total_weight() const;
  /// Neighbour lists, each sorted ascending.
  std::vector<std::vector<std::size_t>> adjacency() const;

  /// Unlabelled graph on n nodes ("n0", "n1", ...) for tests and tools.
  static Graph from_edge_list(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

private:
  std::vector<Node> nodes_;
  std::map<std::string, std::size_t> by_id_;
  std::map<std::pair<std::size_t, std::size_t>, long long> edges_;
};

enum class Level { city, org };
Level level_from_string(std::string_view s);

struct BuildOptions {
  Level level = Level::org;
  std::optional<Window> window;
  /// Org level: raw names are mapped through this before node ids are formed.
  const AliasMap* aliases = nullptr;
  /// City level: sites come from this gazetteer; without it the parsed
  /// city and country of each affiliation are used.
  const geo::Gazetteer* gazetteer = nullptr;
};

struct CoauthorshipGraph {
  Graph graph;
  long long n_articles = 0;  // records in the window
};

/// Nodes are the distinct cities or organisations on each record; every
/// unordered pair on a record adds one to that edge. Nodes are ordered by id.
CoauthorshipGraph build_coauthorship(const std::vector<Record>& records, const BuildOptions& options);

}  // namespace estmap::network
