#include "estmap/overlay/basemap.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include <json.hpp>

#include "estmap/network/graph.hpp"
#include "estmap/network/layout.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"

namespace estmap::overlay {

namespace {
// Identical rows would give zero-length edges; this keeps the layout finite.
constexpr double kMinEdgeLength = 0.05;
}  // namespace

std::optional<std::size_t> Basemap::index_of(const std::string& code) const {
  auto it = by_code_.find(code);
  if (it == by_code_.end()) return std::nullopt;
  return it->second;
}

double Basemap::similarity(std::size_t i, std::size_t j) const {
  if (i == j) return 1.0;
  if (i > j) std::swap(i, j);
  auto it = sim_.find({i, j});
  return it == sim_.end() ? 0.0 : it->second;
}

double Basemap::distance(std::size_t i, std::size_t j) const { return i == j ? 0.0 : 1.0 - similarity(i, j); }

std::vector<BasemapEdge> Basemap::display_edges() const {
  std::vector<BasemapEdge> out;
  for (const auto& e : edges) {
    if (e.s >= prune_threshold) out.push_back(e);
  }
  return out;
}

void Basemap::reindex() {
  by_code_.clear();
  sim_.clear();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (!by_code_.emplace(nodes[i].code, i).second) throw InputError("duplicate basemap code " + nodes[i].code);
  }
  for (auto& e : edges) {
    if (e.i == e.j || e.i >= nodes.size() || e.j >= nodes.size()) throw InputError("basemap edge out of range");
    if (!(e.s > 0.0 && e.s <= 1.0)) throw InputError("basemap similarity must lie in (0, 1]");
    if (e.i > e.j) std::swap(e.i, e.j);
    if (!sim_.emplace(std::make_pair(e.i, e.j), e.s).second) throw InputError("duplicate basemap edge");
  }
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) { return std::tie(a.i, a.j) < std::tie(b.i, b.j); });
  sparse = nodes.size() > 1 && display_edges().empty();
}

std::vector<int> greedy_modularity(std::size_t n, const std::vector<BasemapEdge>& edges, std::uint64_t seed) {
  // Community ids are node ids of a representative; e[a][b] = w_ab / 2m.
  std::vector<std::map<std::size_t, double>> e(n);
  std::vector<double> a(n, 0.0);
  double two_m = 0.0;
  for (const auto& ed : edges) two_m += 2.0 * ed.s;
  std::vector<std::size_t> owner(n);
  std::iota(owner.begin(), owner.end(), 0);
  if (two_m > 0.0) {
    for (const auto& ed : edges) {
      e[ed.i][ed.j] += ed.s / two_m;
      e[ed.j][ed.i] += ed.s / two_m;
      a[ed.i] += ed.s / two_m;
      a[ed.j] += ed.s / two_m;
    }
    std::vector<std::size_t> rank(n);
    std::iota(rank.begin(), rank.end(), 0);
    std::shuffle(rank.begin(), rank.end(), std::mt19937_64(seed));
    std::vector<bool> alive(n, true);
    for (;;) {
      double best = 1e-12;
      std::size_t bi = n, bj = n;
      for (std::size_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        for (const auto& [j, eij] : e[i]) {
          if (j <= i) continue;
          double gain = 2.0 * (eij - a[i] * a[j]);
          bool take = gain > best;
          if (!take && gain == best && bi < n) {
            auto key = std::minmax(rank[i], rank[j]);
            take = key < std::minmax(rank[bi], rank[bj]);
          }
          if (take) {
            best = gain;
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == n) break;
      // Fold bj into bi.
      for (const auto& [k, w] : e[bj]) {
        if (k == bi) continue;
        e[bi][k] += w;
        e[k][bi] += w;
        e[k].erase(bj);
      }
      e[bi].erase(bj);
      e[bj].clear();
      a[bi] += a[bj];
      a[bj] = 0.0;
      alive[bj] = false;
      for (auto& o : owner) {
        if (o == bj) o = bi;
      }
    }
  }
  std::map<std::size_t, int> label;
  std::vector<int> out(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto [it, fresh] = label.emplace(owner[v], static_cast<int>(label.size()));
    out[v] = it->second;
  }
  return out;
}

double modularity(std::size_t n, const std::vector<BasemapEdge>& edges, const std::vector<int>& clusters) {
  double two_m = 0.0;
  std::vector<double> k(n, 0.0);
  for (const auto& ed : edges) {
    two_m += 2.0 * ed.s;
    k[ed.i] += ed.s;
    k[ed.j] += ed.s;
  }
  if (two_m == 0.0) return 0.0;
  std::map<int, double> inside, degree;
  for (const auto& ed : edges) {
    if (clusters[ed.i] == clusters[ed.j]) inside[clusters[ed.i]] += 2.0 * ed.s;
  }
  for (std::size_t v = 0; v < n; ++v) degree[clusters[v]] += k[v];
  double q = 0.0;
  for (const auto& [c, d] : degree) q += inside[c] / two_m - (d / two_m) * (d / two_m);
  return q;
}

Basemap build_basemap(const std::vector<std::string>& codes, const std::vector<std::string>& labels,
                      const Matrix& matrix, CodeScheme scheme, const BasemapBuildOptions& options) {
  const std::size_t n = codes.size();
  if (matrix.size() != n) throw InputError("matrix must have one row per code");
  if (!labels.empty() && labels.size() != n) throw InputError("labels must be empty or one per code");
  if (!(options.prune_threshold > 0.0 && options.prune_threshold <= 1.0)) {
    throw InputError("prune threshold must lie in (0, 1]");
  }
  bool any = false;
  for (const auto& row : matrix) {
    if (row.size() != n) throw InputError("basemap matrix must be square");
    any = any || std::any_of(row.begin(), row.end(), [](double v) { return v != 0.0; });
  }
  if (!any) throw InputError("degenerate basemap: the matrix is all zeros");
  auto s = cosine_similarity(matrix);

  Basemap map;
  map.id = options.id;
  map.scheme = scheme;
  map.prune_threshold = options.prune_threshold;
  for (std::size_t i = 0; i < n; ++i) {
    BasemapNode node;
    node.code = codes[i];
    node.label = labels.empty() ? codes[i] : labels[i];
    if (scheme == CodeScheme::mesh && !codes[i].empty()) node.branch = codes[i][0];
    map.nodes.push_back(std::move(node));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (s[i][j] > 0.0) map.edges.push_back({i, j, s[i][j]});
    }
  }
  map.reindex();

  auto shown = map.display_edges();
  network::Graph g;
  for (const auto& node : map.nodes) g.add_node(node.code, node.label);
  std::map<std::pair<std::size_t, std::size_t>, double> length;
  for (const auto& e : shown) {
    g.add_edge(e.i, e.j);
    length[{e.i, e.j}] = std::max(1.0 - e.s, kMinEdgeLength);
  }
  std::vector<double> lengths;
  for (const auto& e : g.edges()) lengths.push_back(length.at({e.u, e.v}));
  network::LayoutOptions lo;
  lo.seed = options.seed;
  lo.component_gap = 0.25;
  auto layout = network::layout_stress(g, lo, &lengths);
  auto clusters = greedy_modularity(n, shown, options.seed);
  for (std::size_t i = 0; i < n; ++i) {
    map.nodes[i].x = layout.coords[i].x;
    map.nodes[i].y = layout.coords[i].y;
    map.nodes[i].cluster = clusters[i];
  }
  return map;
}

std::optional<std::size_t> reference_node_count(CodeScheme scheme) {
  switch (scheme) {
    case CodeScheme::wos_category: return 225;
    case CodeScheme::journal: return 10330;
    case CodeScheme::mesh: return 822;
    case CodeScheme::ipc: return std::nullopt;
  }
  return std::nullopt;
}

std::string basemap_to_json(const Basemap& basemap) {
  nlohmann::ordered_json j;
  j["format"] = "estmap-basemap";
  j["version"] = 1;
  j["id"] = basemap.id;
  j["scheme"] = to_string(basemap.scheme);
  if (basemap.reference) j["reference"] = true;
  j["prune_threshold"] = basemap.prune_threshold;
  auto& nodes = j["nodes"] = nlohmann::ordered_json::array();
  for (const auto& n : basemap.nodes) {
    nlohmann::ordered_json o{{"code", n.code}, {"label", n.label}, {"cluster", n.cluster}};
    if (n.branch) o["branch"] = std::string(1, *n.branch);
    o["x"] = n.x;
    o["y"] = n.y;
    nodes.push_back(std::move(o));
  }
  auto& edges = j["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : basemap.edges) edges.push_back({{"i", e.i}, {"j", e.j}, {"s", e.s}});
  return j.dump(1) + "\n";
}

Basemap basemap_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("basemap is not valid JSON: ") + e.what(), e.byte, ParseError::Unit::offset);
  }
  Basemap map;
  try {
    map.id = j.value("id", std::string("basemap"));
    map.scheme = code_scheme_from_string(j.at("scheme").get<std::string>());
    map.prune_threshold = j.value("prune_threshold", 0.05);
    for (const auto& n : j.at("nodes")) {
      BasemapNode node;
      node.code = n.at("code").get<std::string>();
      node.label = n.value("label", node.code);
      node.cluster = n.value("cluster", 0);
      if (n.contains("branch")) {
        auto b = n.at("branch").get<std::string>();
        if (b.size() != 1) throw InputError("branch must be a single letter");
        node.branch = b[0];
      }
      node.x = n.at("x").get<double>();
      node.y = n.at("y").get<double>();
      if (!std::isfinite(node.x) || !std::isfinite(node.y)) throw InputError("non-finite coordinate for " + node.code);
      map.nodes.push_back(std::move(node));
    }
    for (const auto& e : j.at("edges")) {
      map.edges.push_back({e.at("i").get<std::size_t>(), e.at("j").get<std::size_t>(), e.at("s").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed basemap: ") + e.what());
  }
  map.reindex();
  map.reference = j.value("reference", false);
  if (map.reference) {
    auto expected = reference_node_count(map.scheme);
    if (expected && *expected != map.nodes.size()) {
      throw InputError("reference " + std::string(to_string(map.scheme)) + " basemap should have " +
                       std::to_string(*expected) + " nodes, found " + std::to_string(map.nodes.size()));
    }
  }
  return map;
}

Basemap load_basemap(const std::string& path) { return basemap_from_json(io::read_file(path)); }

void save_basemap(const Basemap& basemap, const std::string& path) { io::write_file_atomic(path, basemap_to_json(basemap)); }

}  // namespace estmap::overlay
