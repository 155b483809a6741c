#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "estmap/overlay/similarity.hpp"
#include "estmap/records/record.hpp"

namespace estmap::overlay {

struct BasemapNode {
  std::string code;
  std::string label;
  int cluster = 0;
  std::optional<char> branch;  // MeSH branch letter
  double x = 0.0;
  double y = 0.0;
};

/// Pair with positive similarity, i < j.
struct BasemapEdge {
  std::size_t i = 0;
  std::size_t j = 0;
  double s = 0.0;
};

/// A fixed map of categories, journals, MeSH terms or IPC classes. `edges`
/// holds every positive similarity; rendering shows only those at or above
/// `prune_threshold`, while distances for diversity use all of them.
struct Basemap {
  std::string id;
  CodeScheme scheme = CodeScheme::wos_category;
  std::vector<BasemapNode> nodes;
  std::vector<BasemapEdge> edges;
  double prune_threshold = 0.05;
  /// No pair reached the prune threshold.
  bool sparse = false;
  /// A published map; loading checks its node count.
  bool reference = false;

  std::optional<std::size_t> index_of(const std::string& code) const;
  double similarity(std::size_t i, std::size_t j) const;
  /// 1 - similarity; 1 for pairs without an edge, 0 on the diagonal.
  double distance(std::size_t i, std::size_t j) const;
  std::vector<BasemapEdge> display_edges() const;
  /// Rebuilds the code and similarity lookups after nodes/edges change.
  void reindex();

private:
  std::map<std::string, std::size_t> by_code_;
  std::map<std::pair<std::size_t, std::size_t>, double> sim_;
};

struct BasemapBuildOptions {
  std::string id = "basemap";
  std::uint64_t seed = 1;
  double prune_threshold = 0.05;
};

/// Cosine similarity of `matrix` rows, stress layout of the pruned graph with
/// edge length 1 - s, and greedy modularity clusters on the same graph.
Basemap build_basemap(const std::vector<std::string>& codes, const std::vector<std::string>& labels,
                      const Matrix& matrix, CodeScheme scheme, const BasemapBuildOptions& options = {});

/// Greedy agglomerative modularity maximisation (Clauset-Newman-Moore) on a
/// weighted edge list. Cluster ids are 0.. in order of each cluster's first
/// node. Ties between equal gains are broken by a seeded order.
std::vector<int> greedy_modularity(std::size_t n, const std::vector<BasemapEdge>& edges, std::uint64_t seed);
double modularity(std::size_t n, const std::vector<BasemapEdge>& edges, const std::vector<int>& clusters);

/// Node count a published reference map of this scheme must have, if fixed.
std::optional<std::size_t> reference_node_count(CodeScheme scheme);

std::string basemap_to_json(const Basemap& basemap);
/// Throws ParseError on malformed documents and InputError when a document
/// marked as a reference map has the wrong node count.
Basemap basemap_from_json(const std::string& text);
Basemap load_basemap(const std::string& path);
void save_basemap(const Basemap& basemap, const std::string& path);

}  // namespace estmap::overlay
