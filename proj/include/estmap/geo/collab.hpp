#pragma once

#include <vector>

#include "estmap/geo/gazetteer.hpp"

namespace estmap::geo {

struct SizeScale {
  double log_base = 10.0;
  double min_px = 2.0;
  double max_px = 24.0;
};

/// log_base(count + 1); zero for a zero count.
double size_term(long long count, double log_base);

struct CityNode {
  GeoSite site;
  long long records = 0;
  double size_px = 0.0;
};

struct CityEdge {
  std::size_t a = 0;  // index into nodes, a < b
  std::size_t b = 0;
  long long weight = 0;
};

struct CollabGeo {
  std::vector<CityNode> nodes;  // gazetteer order
  std::vector<CityEdge> edges;  // sorted by (a, b)
};

/// Cities as nodes, co-occurrence on a record as edges. Each record counts
/// once per city and once per city pair.
CollabGeo collab_geo_edges(const std::vector<Record>& records, const Window& window, const Gazetteer& gazetteer,
                           const SizeScale& scale = {});

}  // namespace estmap::geo
