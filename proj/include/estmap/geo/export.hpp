#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "estmap/geo/collab.hpp"
#include "estmap/geo/excellence.hpp"

namespace estmap::geo {

/// dark_green, light_green, red or orange. A site with no difference from
/// its expectation is drawn like a non-significant positive one.
std::string_view style_for(bool significant, Direction direction);

std::string export_geojson(const std::vector<SiteStats>& sites);
std::string export_geojson(const CollabGeo& network);
/// KML 2.2 document with the four shared styles.
std::string export_kml(const std::vector<SiteStats>& sites, std::string_view name = "excellence");

}  // namespace estmap::geo
