#include "estmap/network/graph.hpp"

#include <algorithm>
#include <set>

#include "estmap/geo/gazetteer.hpp"
#include "estmap/network/aliases.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/text.hpp"

namespace estmap::network {

std::string_view to_string(NodeKind kind) { return kind == NodeKind::city ? "city" : "org"; }

Level level_from_string(std::string_view s) {
  auto l = text::to_lower_ascii(s);
  if (l == "city") return Level::city;
  if (l == "org" || l == "organisation" || l == "organization") return Level::org;
  throw InputError("unknown network level '" + std::string(s) + "' (expected city or org)");
}

std::size_t Graph::add_node(std::string id, std::string label, NodeKind kind, long long article_count) {
  if (by_id_.count(id)) throw InputError("duplicate node id " + id);
  by_id_.emplace(id, nodes_.size());
  nodes_.push_back({std::move(id), std::move(label), kind, article_count});
  return nodes_.size() - 1;
}

void Graph::add_edge(std::size_t u, std::size_t v, long long weight) {
  if (u == v) throw InputError("self-loop on node " + nodes_.at(u).id);
  if (u >= nodes_.size() || v >= nodes_.size()) throw InputError("edge endpoint out of range");
  if (weight < 1) throw InputError("edge weight must be at least 1");
  if (u > v) std::swap(u, v);
  edges_[{u, v}] += weight;
}

std::optional<std::size_t> Graph::find(const std::string& id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edges_.size());
  for (const auto& [uv, w] : edges_) out.push_back({uv.first, uv.second, w});
  return out;
}

long long Graph::total_weight() const {
  long long sum = 0;
  for (const auto& [uv, w] : edges_) sum += w;
  return sum;
}

std::vector<std::vector<std::size_t>> Graph::adjacency() const {
  std::vector<std::vector<std::size_t>> adj(nodes_.size());
  for (const auto& [uv, w] : edges_) {
    adj[uv.first].push_back(uv.second);
    adj[uv.second].push_back(uv.first);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

Graph Graph::from_edge_list(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  Graph g;
  for (std::size_t i = 0; i < n; ++i) g.add_node("n" + std::to_string(i), "n" + std::to_string(i));
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

namespace {

struct NodeKey {
  std::string id;
  std::string label;
};

std::vector<NodeKey> record_nodes(const Record& r, const BuildOptions& opt) {
  std::vector<NodeKey> keys;
  for (const auto& a : r.affiliations) {
    if (opt.level == Level::org) {
      if (!a.organisation || text::trim(*a.organisation).empty()) continue;
      auto name = opt.aliases ? opt.aliases->apply(*a.organisation) : std::string(text::trim(*a.organisation));
      keys.push_back({text::fold_key(name), name});
    } else if (opt.gazetteer) {
      if (const auto* s = opt.gazetteer->resolve(a)) {
        keys.push_back({text::fold_key(s->city) + "|" + text::fold_key(s->country), s->label()});
      }
    } else if (a.city && a.country) {
      keys.push_back({text::fold_key(*a.city) + "|" + text::fold_key(*a.country), *a.city + ", " + *a.country});
    }
  }
  return keys;
}

}  // namespace

CoauthorshipGraph build_coauthorship(const std::vector<Record>& records, const BuildOptions& options) {
  // Pass 1: per-record node sets, counts and the smallest label per id.
  std::map<std::string, std::string> label_of;
  std::map<std::string, long long> count_of;
  std::vector<std::vector<std::string>> per_record;
  CoauthorshipGraph out;
  for (const auto& r : records) {
    if (options.window && !options.window->contains(r.year)) continue;
    ++out.n_articles;
    std::set<std::string> ids;
    for (auto& k : record_nodes(r, options)) {
      auto [it, fresh] = label_of.emplace(k.id, k.label);
      if (!fresh && k.label < it->second) it->second = k.label;
      ids.insert(k.id);
    }
    for (const auto& id : ids) ++count_of[id];
    per_record.emplace_back(ids.begin(), ids.end());
  }
  auto kind = options.level == Level::city ? NodeKind::city : NodeKind::org;
  for (const auto& [id, label] : label_of) out.graph.add_node(id, label, kind, count_of[id]);
  for (const auto& ids : per_record) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      for (std::size_t j = i + 1; j < ids.size(); ++j) {
        out.graph.add_edge(*out.graph.find(ids[i]), *out.graph.find(ids[j]));
      }
    }
  }
  return out;
}

}  // namespace estmap::network
