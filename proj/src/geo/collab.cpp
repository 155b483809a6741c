#include "estmap/geo/collab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "estmap/util/error.hpp"

namespace estmap::geo {

double size_term(long long count, double log_base) {
  if (!(log_base > 1.0)) throw InputError("log base must exceed 1");
  if (count <= 0) return 0.0;
  return std::log(static_cast<double>(count) + 1.0) / std::log(log_base);
}

CollabGeo collab_geo_edges(const std::vector<Record>& records, const Window& window, const Gazetteer& gazetteer,
                           const SizeScale& scale) {
  std::map<const GeoSite*, long long> counts;
  std::map<std::pair<const GeoSite*, const GeoSite*>, long long> pairs;
  for (const auto& r : records) {
    if (!window.contains(r.year)) continue;
    auto sites = record_sites(r, gazetteer);
    for (std::size_t i = 0; i < sites.size(); ++i) {
      ++counts[sites[i]];
      for (std::size_t j = i + 1; j < sites.size(); ++j) ++pairs[{sites[i], sites[j]}];
    }
  }

  CollabGeo out;
  std::map<const GeoSite*, std::size_t> index;
  double max_term = 0.0;
  for (const auto& [site, n] : counts) {
    index[site] = out.nodes.size();
    out.nodes.push_back({*site, n, 0.0});
    max_term = std::max(max_term, size_term(n, scale.log_base));
  }
  for (auto& node : out.nodes) {
    double t = size_term(node.records, scale.log_base);
    node.size_px = max_term > 0.0 ? scale.min_px + (scale.max_px - scale.min_px) * t / max_term : scale.min_px;
  }
  for (const auto& [pair, w] : pairs) out.edges.push_back({index.at(pair.first), index.at(pair.second), w});
  std::sort(out.edges.begin(), out.edges.end(),
            [](const CityEdge& x, const CityEdge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  return out;
}

}  // namespace estmap::geo
