#pragma once

// Structural validators for exported documents. Each returns a list of
// problems; an empty list means the document conforms.

#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <json.hpp>

#include "estmap/util/text.hpp"

namespace estmap::testing {

using Problems = std::vector<std::string>;

namespace detail {

inline bool finite_number(const std::string& s) {
  auto v = text::parse_double(text::trim(s));
  return v && std::isfinite(*v);
}

inline Problems position(const nlohmann::json& p, const std::string& where) {
  Problems out;
  if (!p.is_array() || p.size() < 2 || p.size() > 3) return {where + ": position must hold 2 or 3 numbers"};
  for (const auto& v : p) {
    if (!v.is_number() || !std::isfinite(v.get<double>())) out.push_back(where + ": non-numeric coordinate");
  }
  if (!out.empty()) return out;
  double lon = p[0].get<double>(), lat = p[1].get<double>();
  if (lon < -180.0 || lon > 180.0) out.push_back(where + ": longitude out of range");
  if (lat < -90.0 || lat > 90.0) out.push_back(where + ": latitude out of range");
  return out;
}

inline boost::property_tree::ptree parse_xml(const std::string& text, Problems& problems) {
  boost::property_tree::ptree tree;
  std::istringstream in(text);
  try {
    boost::property_tree::read_xml(in, tree);
  } catch (const boost::property_tree::xml_parser_error& e) {
    problems.push_back(std::string("not well-formed XML: ") + e.what());
  }
  return tree;
}

inline std::string attr(const boost::property_tree::ptree& node, const std::string& name) {
  // '/' separator: attribute names such as attr.type contain dots
  using Path = boost::property_tree::ptree::path_type;
  return node.get<std::string>(Path("<xmlattr>/" + name, '/'), "");
}

}  // namespace detail

/// RFC 7946 structure: FeatureCollection of Features with Point or
/// LineString geometry in lon/lat order and an object of properties.
inline Problems validate_geojson(const std::string& text) {
  Problems out;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    return {std::string("not JSON: ") + e.what()};
  }
  if (!j.is_object() || j.value("type", "") != "FeatureCollection") return {"top level is not a FeatureCollection"};
  if (!j.contains("features") || !j["features"].is_array()) return {"features must be an array"};
  std::size_t k = 0;
  for (const auto& f : j["features"]) {
    auto where = "feature " + std::to_string(k++);
    if (!f.is_object() || f.value("type", "") != "Feature") {
      out.push_back(where + ": type must be Feature");
      continue;
    }
    if (!f.contains("properties") || !(f["properties"].is_object() || f["properties"].is_null())) {
      out.push_back(where + ": properties must be an object or null");
    }
    if (!f.contains("geometry") || !f["geometry"].is_object()) {
      out.push_back(where + ": geometry missing");
      continue;
    }
    const auto& g = f["geometry"];
    auto type = g.value("type", "");
    if (!g.contains("coordinates")) {
      out.push_back(where + ": coordinates missing");
      continue;
    }
    const auto& c = g["coordinates"];
    if (type == "Point") {
      auto p = detail::position(c, where);
      out.insert(out.end(), p.begin(), p.end());
    } else if (type == "LineString") {
      if (!c.is_array() || c.size() < 2) out.push_back(where + ": LineString needs two or more positions");
      for (const auto& pos : c) {
        auto p = detail::position(pos, where);
        out.insert(out.end(), p.begin(), p.end());
      }
    } else {
      out.push_back(where + ": unsupported geometry type '" + type + "'");
    }
  }
  return out;
}

/// KML 2.2: kml root in the OGC namespace, Placemarks with a Point whose
/// coordinates are "lon,lat[,alt]", styleUrl targets declared Styles.
inline Problems validate_kml(const std::string& text) {
  Problems out;
  auto tree = detail::parse_xml(text, out);
  if (!out.empty()) return out;
  auto root = tree.get_child_optional("kml");
  if (!root) return {"root element is not kml"};
  if (detail::attr(*root, "xmlns") != "http://www.opengis.net/kml/2.2") out.push_back("kml namespace missing");
  auto doc = root->get_child_optional("Document");
  if (!doc) return {"Document element missing"};
  std::set<std::string> styles;
  for (const auto& [name, child] : *doc) {
    if (name == "Style") styles.insert("#" + detail::attr(child, "id"));
  }
  for (const auto& [name, child] : *doc) {
    if (name != "Placemark") continue;
    auto style = child.get<std::string>("styleUrl", "");
    if (!style.empty() && !styles.count(style)) out.push_back("styleUrl " + style + " has no Style");
    auto coords = child.get_optional<std::string>("Point.coordinates");
    if (!coords) {
      out.push_back("Placemark without Point coordinates");
      continue;
    }
    auto parts = text::split(std::string(text::trim(*coords)), ',');
    if (parts.size() < 2 || parts.size() > 3) {
      out.push_back("coordinates must be lon,lat[,alt]");
      continue;
    }
    for (const auto& p : parts) {
      if (!detail::finite_number(p)) out.push_back("non-numeric coordinate '" + p + "'");
    }
  }
  return out;
}

/// GraphML: namespace, declared keys with a domain and a primitive type,
/// unique node ids, edges between declared nodes, data values that parse as
/// their key's type.
inline Problems validate_graphml(const std::string& text) {
  Problems out;
  auto tree = detail::parse_xml(text, out);
  if (!out.empty()) return out;
  auto root = tree.get_child_optional("graphml");
  if (!root) return {"root element is not graphml"};
  if (detail::attr(*root, "xmlns") != "http://graphml.graphdrawing.org/xmlns") out.push_back("graphml namespace missing");

  struct Key {
    std::string domain;
    std::string type;
  };
  std::map<std::string, Key> keys;
  const std::set<std::string> types = {"boolean", "int", "long", "float", "double", "string"};
  const std::set<std::string> domains = {"node", "edge", "graph", "all"};
  for (const auto& [name, child] : *root) {
    if (name != "key") continue;
    Key k{detail::attr(child, "for"), detail::attr(child, "attr.type")};
    auto id = detail::attr(child, "id");
    if (id.empty()) out.push_back("key without id");
    if (!domains.count(k.domain)) out.push_back("key " + id + " has domain '" + k.domain + "'");
    if (!types.count(k.type)) out.push_back("key " + id + " has type '" + k.type + "'");
    if (!keys.emplace(id, k).second) out.push_back("duplicate key " + id);
  }

  auto check_data = [&](const boost::property_tree::ptree& element, const std::string& domain,
                        const std::string& where) {
    for (const auto& [name, d] : element) {
      if (name != "data") continue;
      auto key = detail::attr(d, "key");
      auto it = keys.find(key);
      if (it == keys.end()) {
        out.push_back(where + ": data for undeclared key " + key);
        continue;
      }
      if (it->second.domain != domain && it->second.domain != "all") {
        out.push_back(where + ": key " + key + " declared for " + it->second.domain);
      }
      auto value = d.get_value<std::string>();
      const auto& type = it->second.type;
      if ((type == "double" || type == "float") && !detail::finite_number(value)) {
        out.push_back(where + ": '" + value + "' is not a " + type);
      }
      if ((type == "int" || type == "long") && !text::parse_int(text::trim(value))) {
        out.push_back(where + ": '" + value + "' is not an integer");
      }
      if (type == "boolean" && value != "true" && value != "false") out.push_back(where + ": bad boolean");
    }
  };

  auto graph = root->get_child_optional("graph");
  if (!graph) return {"graph element missing"};
  auto edgedefault = detail::attr(*graph, "edgedefault");
  if (edgedefault != "directed" && edgedefault != "undirected") out.push_back("edgedefault missing");
  std::set<std::string> nodes;
  for (const auto& [name, child] : *graph) {
    if (name != "node") continue;
    auto id = detail::attr(child, "id");
    if (id.empty() || !nodes.insert(id).second) out.push_back("missing or duplicate node id '" + id + "'");
    check_data(child, "node", "node " + id);
  }
  for (const auto& [name, child] : *graph) {
    if (name != "edge") continue;
    auto s = detail::attr(child, "source"), t = detail::attr(child, "target");
    if (!nodes.count(s) || !nodes.count(t)) out.push_back("edge " + s + "-" + t + " references an unknown node");
    check_data(child, "edge", "edge " + s + "-" + t);
  }
  return out;
}

/// SVG 1.1 subset: svg root in the SVG namespace with positive size, and
/// every geometric attribute of the shapes used a finite number.
inline Problems validate_svg(const std::string& text) {
  Problems out;
  auto tree = detail::parse_xml(text, out);
  if (!out.empty()) return out;
  auto root = tree.get_child_optional("svg");
  if (!root) return {"root element is not svg"};
  if (detail::attr(*root, "xmlns") != "http://www.w3.org/2000/svg") out.push_back("svg namespace missing");
  for (const char* dim : {"width", "height"}) {
    auto v = text::parse_double(detail::attr(*root, dim));
    if (!v || !(*v > 0.0)) out.push_back(std::string("svg ") + dim + " must be positive");
  }
  auto vb = text::split(std::string(text::trim(detail::attr(*root, "viewBox"))), ' ');
  if (vb.size() != 4) out.push_back("viewBox must hold four numbers");

  const std::map<std::string, std::vector<std::string>> numeric = {
      {"circle", {"cx", "cy", "r"}},
      {"line", {"x1", "y1", "x2", "y2"}},
      {"rect", {"width", "height"}},
      {"text", {"x", "y"}},
      {"ellipse", {"cx", "cy", "rx", "ry"}},
  };
  std::function<void(const boost::property_tree::ptree&)> walk = [&](const boost::property_tree::ptree& node) {
    for (const auto& [name, child] : node) {
      if (name == "<xmlattr>" || name == "<xmlcomment>") continue;
      if (auto it = numeric.find(name); it != numeric.end()) {
        for (const auto& a : it->second) {
          auto v = detail::attr(child, a);
          if (v.empty() || !detail::finite_number(v)) out.push_back(name + " has bad " + a + " '" + v + "'");
          else if ((a == "r" || a == "width" || a == "height") && *text::parse_double(v) < 0.0) {
            out.push_back(name + " has negative " + a);
          }
        }
      }
      if (name == "polyline" || name == "polygon") {
        auto pts = text::split(std::string(text::trim(detail::attr(child, "points"))), ' ');
        for (const auto& p : pts) {
          auto xy = text::split(p, ',');
          if (xy.size() != 2 || !detail::finite_number(xy[0]) || !detail::finite_number(xy[1])) {
            out.push_back(name + " has bad point '" + p + "'");
          }
        }
      }
      walk(child);
    }
  };
  walk(*root);
  return out;
}

}  // namespace estmap::testing
