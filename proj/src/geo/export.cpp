#include "estmap/geo/export.hpp"

#include <json.hpp>

#include "estmap/util/numfmt.hpp"

namespace estmap::geo {

using ojson = nlohmann::ordered_json;

std::string_view style_for(bool significant, Direction direction) {
  if (direction == Direction::negative) return significant ? "red" : "orange";
  if (direction == Direction::positive && significant) return "dark_green";
  return "light_green";
}

namespace {

ojson point(const GeoSite& s) {
  return {{"type", "Point"}, {"coordinates", {s.lon, s.lat}}};
}

ojson collection(ojson features) {
  return {{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

// KML colours are aabbggrr.
constexpr std::pair<std::string_view, std::string_view> kKmlStyles[] = {
    {"dark_green", "ff006400"},
    {"light_green", "ff90ee90"},
    {"red", "ff0000ff"},
    {"orange", "ff00a5ff"},
};

}  // namespace

std::string export_geojson(const std::vector<SiteStats>& sites) {
  ojson features = ojson::array();
  for (const auto& s : sites) {
    features.push_back({{"type", "Feature"},
                        {"geometry", point(s.site)},
                        {"properties",
                         {{"city", s.site.city},
                          {"country", s.site.country},
                          {"n_total", s.n_total},
                          {"n_top", s.n_top},
                          {"expected", s.expected_top},
                          {"chi2", s.chi2},
                          {"p_value", s.p_value},
                          {"significant", s.significant},
                          {"direction", to_string(s.direction)},
                          {"validity_warning", s.validity_warning},
                          {"style", style_for(s.significant, s.direction)}}}});
  }
  return collection(std::move(features)).dump(1) + "\n";
}

std::string export_geojson(const CollabGeo& network) {
  ojson features = ojson::array();
  for (const auto& n : network.nodes) {
    features.push_back({{"type", "Feature"},
                        {"geometry", point(n.site)},
                        {"properties",
                         {{"city", n.site.city},
                          {"country", n.site.country},
                          {"records", n.records},
                          {"size_px", n.size_px}}}});
  }
  for (const auto& e : network.edges) {
    const auto& a = network.nodes[e.a].site;
    const auto& b = network.nodes[e.b].site;
    features.push_back({{"type", "Feature"},
                        {"geometry", {{"type", "LineString"}, {"coordinates", {{a.lon, a.lat}, {b.lon, b.lat}}}}},
                        {"properties", {{"source", a.label()}, {"target", b.label()}, {"weight", e.weight}}}});
  }
  return collection(std::move(features)).dump(1) + "\n";
}

std::string export_kml(const std::vector<SiteStats>& sites, std::string_view name) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<kml xmlns=\"http://www.opengis.net/kml/2.2\">\n<Document>\n";
  out += "<name>" + xml_escape(name) + "</name>\n";
  for (const auto& [id, colour] : kKmlStyles) {
    out += "<Style id=\"" + std::string(id) + "\"><IconStyle><color>" + std::string(colour) +
           "</color></IconStyle></Style>\n";
  }
  for (const auto& s : sites) {
    out += "<Placemark>\n";
    out += "  <name>" + xml_escape(s.site.label()) + "</name>\n";
    out += "  <styleUrl>#" + std::string(style_for(s.significant, s.direction)) + "</styleUrl>\n";
    out += "  <ExtendedData>\n";
    auto data = [&](std::string_view key, const std::string& value) {
      out += "    <Data name=\"" + std::string(key) + "\"><value>" + xml_escape(value) + "</value></Data>\n";
    };
    data("n_total", std::to_string(s.n_total));
    data("n_top", std::to_string(s.n_top));
    data("expected", numfmt::fixed(s.expected_top, 4));
    data("chi2", numfmt::fixed(s.chi2, 4));
    data("significant", s.significant ? "true" : "false");
    data("direction", std::string(to_string(s.direction)));
    out += "  </ExtendedData>\n";
    out += "  <Point><coordinates>" + numfmt::shortest(s.site.lon) + "," + numfmt::shortest(s.site.lat) +
           "</coordinates></Point>\n";
    out += "</Placemark>\n";
  }
  out += "</Document>\n</kml>\n";
  return out;
}

}  // namespace estmap::geo
