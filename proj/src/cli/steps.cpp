#include "estmap/cli/steps.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "estmap/geo/collab.hpp"
#include "estmap/geo/excellence.hpp"
#include "estmap/geo/export.hpp"
#include "estmap/network/centrality.hpp"
#include "estmap/network/components.hpp"
#include "estmap/network/export.hpp"
#include "estmap/network/layout.hpp"
#include "estmap/overlay/density.hpp"
#include "estmap/overlay/diversity.hpp"
#include "estmap/overlay/frame.hpp"
#include "estmap/overlay/render.hpp"
#include "estmap/query/emit.hpp"
#include "estmap/query/parse.hpp"
#include "estmap/records/serialize.hpp"
#include "estmap/records/timeline.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"
#include "estmap/util/numfmt.hpp"
#include "estmap/util/text.hpp"

namespace estmap::cli {

namespace {

std::string db_name(SourceDb db) { return std::string(to_string(db)); }
std::string scheme_name(CodeScheme s) { return std::string(to_string(s)); }

Formats or_default(const Formats& requested, Formats fallback, const Formats& allowed, std::string_view step) {
  if (requested.empty()) return fallback;
  for (const auto& f : requested) {
    if (!allowed.count(f)) throw InputError(std::string(step) + " cannot write format '" + f + "'");
  }
  return requested;
}

Summary head(std::string_view command) {
  Summary s;
  s["command"] = command;
  return s;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Two yearly series as polylines on a shared axis.
std::string trend_svg(const TrendComparison& t, const std::string& a, const std::string& b) {
  const double w = 640, h = 360, m = 40;
  std::size_t peak = 1;
  for (auto v : t.first) peak = std::max(peak, v);
  for (auto v : t.second) peak = std::max(peak, v);
  const double nx = t.years.size() > 1 ? static_cast<double>(t.years.size() - 1) : 1.0;
  auto x = [&](std::size_t i) { return numfmt::fixed(m + (w - 2 * m) * static_cast<double>(i) / nx, 2); };
  auto y = [&](std::size_t v) {
    return numfmt::fixed(h - m - (h - 2 * m) * static_cast<double>(v) / static_cast<double>(peak), 2);
  };
  auto line = [&](const std::vector<std::size_t>& series, const char* colour) {
    std::string pts;
    for (std::size_t i = 0; i < series.size(); ++i) pts += (i ? " " : "") + x(i) + "," + y(series[i]);
    return std::string("  <polyline fill=\"none\" stroke=\"") + colour + "\" stroke-width=\"2\" points=\"" + pts +
           "\"/>\n";
  };
  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"360\" viewBox=\"0 0 640 360\">\n";
  out += "  <rect width=\"640\" height=\"360\" fill=\"white\"/>\n";
  out += line(t.first, "#1f77b4");
  out += line(t.second, "#d62728");
  for (std::size_t i = 0; i < t.years.size(); ++i) {
    out += "  <text x=\"" + x(i) + "\" y=\"" + numfmt::fixed(h - m / 3, 2) +
           "\" font-size=\"9\" text-anchor=\"middle\">" + std::to_string(t.years[i]) + "</text>\n";
  }
  out += "  <text x=\"" + numfmt::fixed(m, 2) + "\" y=\"20\" font-size=\"12\" fill=\"#1f77b4\">" + xml_escape(a) +
         "</text>\n";
  out += "  <text x=\"" + numfmt::fixed(m + 120, 2) + "\" y=\"20\" font-size=\"12\" fill=\"#d62728\">" +
         xml_escape(b) + "</text>\n";
  out += "</svg>\n";
  return out;
}

nlohmann::ordered_json site_json(const geo::SiteStats& s) {
  nlohmann::ordered_json j;
  j["city"] = s.site.city;
  j["country"] = s.site.country;
  j["lat"] = s.site.lat;
  j["lon"] = s.site.lon;
  j["n_total"] = s.n_total;
  j["n_top"] = s.n_top;
  j["expected_top"] = s.expected_top;
  j["chi2"] = s.chi2;
  j["p_value"] = s.p_value;
  j["significant"] = s.significant;
  j["direction"] = to_string(s.direction);
  j["validity_warning"] = s.validity_warning;
  return j;
}

nlohmann::ordered_json report_json(const network::ComponentReport& r) {
  nlohmann::ordered_json j;
  j["window"] = r.window ? r.window->label() : "all";
  j["articles"] = r.n_articles;
  j["nodes"] = r.n_nodes;
  j["ties"] = r.n_ties;
  j["total_weight"] = r.total_weight;
  j["components"] = r.n_components;
  j["components_min_size"] = r.n_components_min;
  j["min_component_size"] = r.min_component_size;
  j["giant"] = r.giant_size;
  j["giant_percent"] = r.giant_share.percent();
  j["isolated"] = r.isolated_count;
  j["isolated_percent"] = r.isolated_share.percent();
  return j;
}

std::string pad3(std::size_t i) {
  auto s = std::to_string(i);
  return std::string(s.size() < 3 ? 3 - s.size() : 0, '0') + s;
}

}  // namespace

Summary step_ingest(Workspace& ws) {
  const auto& store = ws.store();
  store.save(ws.manifest().store);
  auto s = head("ingest");
  s["records"] = store.size();
  nlohmann::ordered_json by_db = nlohmann::ordered_json::object();
  for (const auto& r : store.all()) {
    auto key = db_name(r.source_db);
    by_db[key] = by_db.value(key, 0) + 1;
  }
  s["by_db"] = by_db;
  s["warnings"] = ws.ingest_warnings();
  s["store"] = ws.manifest().store.string();
  return s;
}

Summary step_delineate(Workspace& ws, SourceDb db) {
  const auto& corpus = ws.corpus(db);
  auto rel = "corpora/" + db_name(db) + ".json";
  ws.write(rel, to_json(corpus).dump(1) + "\n", "json", "delineate");
  auto s = head("delineate");
  s["db"] = db_name(db);
  s["corpus"] = corpus.name;
  s["records"] = corpus.record_ids.size();
  s["query"] = corpus.provenance.query_text;
  s["file"] = rel;
  return s;
}

Summary step_emit(Workspace& ws, SourceDb db, query::Dialect dialect) {
  const auto* text = ws.manifest().query_for(db);
  if (!text) throw InputError("manifest has no query for " + db_name(db));
  auto q = query::parse_query(*text, query::Dialect::canonical);
  auto s = head("delineate");
  s["db"] = db_name(db);
  s["dialect"] = to_string(dialect);
  s["query"] = query::emit_query(q, dialect);
  return s;
}

Summary step_windows(Workspace& ws) {
  nlohmann::ordered_json list = nlohmann::ordered_json::array();
  for (const auto& w : ws.windows()) {
    nlohmann::ordered_json j;
    j["label"] = w.label();
    j["start"] = w.start_year;
    j["end"] = w.end_year;
    nlohmann::ordered_json counts = nlohmann::ordered_json::object();
    for (auto db : ws.databases()) counts[db_name(db)] = records_in(ws.corpus_records(db), w).size();
    j["records"] = counts;
    list.push_back(j);
  }
  nlohmann::ordered_json outside = nlohmann::ordered_json::object();
  for (auto db : ws.databases()) {
    std::size_t n = 0;
    for (const auto& r : ws.corpus_records(db)) {
      const auto& all = ws.windows();
      n += std::none_of(all.begin(), all.end(), [&](const Window& w) { return w.contains(r.year); }) ? 1 : 0;
    }
    outside[db_name(db)] = n;
  }
  nlohmann::ordered_json doc;
  doc["windows"] = list;
  doc["outside_windows"] = outside;
  ws.write("windows.json", doc.dump(1) + "\n", "json", "windows");
  auto s = head("windows");
  s["windows"] = list;
  s["outside_windows"] = outside;
  return s;
}

Summary step_counts(Workspace& ws, SourceDb db) {
  const auto& records = ws.corpus_records(db);
  auto counts = yearly_counts(records);
  std::string tsv = "year\tcount\n";
  nlohmann::ordered_json years = nlohmann::ordered_json::object();
  std::size_t total = 0;
  for (const auto& [year, n] : counts) {
    tsv += std::to_string(year) + "\t" + std::to_string(n) + "\n";
    years[std::to_string(year)] = n;
    total += n;
  }
  tsv += "total\t" + std::to_string(total) + "\n";
  auto rel = "counts/" + db_name(db) + ".tsv";
  ws.write(rel, tsv, "tsv", "counts");
  auto s = head("counts");
  s["db"] = db_name(db);
  s["records"] = records.size();
  s["total"] = total;
  s["years"] = years;
  s["file"] = rel;
  return s;
}

Summary step_trends(Workspace& ws, SourceDb a, SourceDb b) {
  auto t = compare_trends(ws.corpus_records(a), ws.corpus_records(b));
  std::string tsv = "year\t" + db_name(a) + "\t" + db_name(b) + "\n";
  for (std::size_t i = 0; i < t.years.size(); ++i) {
    tsv += std::to_string(t.years[i]) + "\t" + std::to_string(t.first[i]) + "\t" + std::to_string(t.second[i]) + "\n";
  }
  auto stem = "trends/" + db_name(a) + "-" + db_name(b);
  ws.write(stem + ".tsv", tsv, "tsv", "trends");
  ws.write(stem + ".svg", trend_svg(t, db_name(a), db_name(b)), "svg", "trends");
  auto s = head("trends");
  s["a"] = db_name(a);
  s["b"] = db_name(b);
  s["years"] = t.years;
  s["a_counts"] = t.first;
  s["b_counts"] = t.second;
  s["files"] = {stem + ".tsv", stem + ".svg"};
  return s;
}

Summary step_geomap(Workspace& ws, SourceDb db, const Window& window, const Formats& formats) {
  const auto& m = ws.manifest();
  auto fmt = or_default(formats, {"geojson"}, {"geojson", "kml", "json"}, "geomap");
  auto kind = kind_of(db);
  auto cfg = geo::ExcellenceConfig::for_kind(kind);
  cfg.top_share = kind == RecordKind::patent ? m.top_share_patents : m.top_share_publications;
  cfg.alpha = m.alpha;
  cfg.chi2_critical = m.chi2_critical;
  cfg.min_records = m.min_geo_records;
  cfg.check();

  auto map = geo::excellence_map(ws.corpus_records(db), window, ws.gazetteer(), cfg);

  auto stem = "geo/excellence/" + db_name(db) + "/" + window.label();
  std::vector<std::string> files;
  if (fmt.count("geojson")) {
    ws.write(stem + ".geojson", geo::export_geojson(map.sites), "geojson", "geomap");
    files.push_back(stem + ".geojson");
  }
  if (fmt.count("kml")) {
    ws.write(stem + ".kml", geo::export_kml(map.sites, db_name(db) + " " + window.label()), "kml", "geomap");
    files.push_back(stem + ".kml");
  }
  if (fmt.count("json")) {
    nlohmann::ordered_json doc;
    doc["window"] = window.label();
    doc["top_share"] = cfg.top_share;
    doc["K"] = map.K;
    doc["N"] = map.N;
    doc["cutoff"] = map.cutoff;
    doc["ungeocoded_records"] = map.ungeocoded_records;
    doc["sites"] = nlohmann::ordered_json::array();
    for (const auto& site : map.sites) doc["sites"].push_back(site_json(site));
    doc["warnings"] = map.warnings;
    ws.write(stem + ".json", doc.dump(1) + "\n", "json", "geomap");
    files.push_back(stem + ".json");
  }

  int pos = 0, neg = 0;
  for (const auto& site : map.sites) {
    if (!site.significant) continue;
    if (site.direction == geo::Direction::positive) ++pos;
    if (site.direction == geo::Direction::negative) ++neg;
  }
  auto s = head("geomap");
  s["db"] = db_name(db);
  s["window"] = window.label();
  s["top_share"] = cfg.top_share;
  s["records"] = map.N;
  s["top"] = map.K;
  s["cutoff"] = map.cutoff;
  s["sites"] = map.sites.size();
  s["significant_positive"] = pos;
  s["significant_negative"] = neg;
  s["warnings"] = map.warnings;
  s["files"] = files;
  return s;
}

Summary step_collabmap(Workspace& ws, SourceDb db, const Window& window) {
  auto net = geo::collab_geo_edges(ws.corpus_records(db), window, ws.gazetteer());
  auto rel = "geo/collab/" + db_name(db) + "/" + window.label() + ".geojson";
  ws.write(rel, geo::export_geojson(net), "geojson", "collabmap");
  auto s = head("collabmap");
  s["db"] = db_name(db);
  s["window"] = window.label();
  s["cities"] = net.nodes.size();
  s["links"] = net.edges.size();
  s["file"] = rel;
  return s;
}

Summary step_netreport(Workspace& ws, SourceDb db, network::Level level, const std::vector<Window>& windows,
                       const Formats& formats) {
  const auto& m = ws.manifest();
  auto fmt = or_default(formats, {"graphml", "svg"}, {"graphml", "svg", "json"}, "netreport");
  const std::string level_name = level == network::Level::city ? "city" : "org";
  const std::string dir = "network/" + db_name(db) + "/" + level_name + "/";

  network::BuildOptions build;
  build.level = level;
  build.aliases = ws.org_aliases();
  if (ws.has_gazetteer()) build.gazetteer = &ws.gazetteer();

  std::vector<network::ComponentReport> reports;
  std::vector<std::string> files;
  for (const auto& w : windows) {
    build.window = w;
    auto cg = network::build_coauthorship(ws.corpus_records(db), build);
    auto report = network::component_report(cg.graph, m.min_component_size);
    report.window = w;
    report.n_articles = cg.n_articles;
    reports.push_back(report);

    if (!fmt.count("graphml") && !fmt.count("svg")) continue;
    network::LayoutOptions lopt;
    lopt.seed = ws.seed();
    auto layout = network::layout_stress(cg.graph, lopt);
    if (fmt.count("graphml")) {
      ws.write(dir + w.label() + ".graphml", network::export_graphml(cg.graph, layout.coords), "graphml",
               "netreport");
      files.push_back(dir + w.label() + ".graphml");
    }
    if (fmt.count("svg")) {
      network::SvgOptions sopt;
      if (cg.graph.node_count() > 0) sopt.labelled = network::top_central(cg.graph, m.centrality_share).nodes;
      ws.write(dir + w.label() + ".svg", network::export_network_svg(cg.graph, layout.coords, sopt), "svg",
               "netreport");
      files.push_back(dir + w.label() + ".svg");
    }
  }

  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& r : reports) rows.push_back(report_json(r));
  ws.write(dir + "components.txt", network::format_report_table(reports), "txt", "netreport");
  files.push_back(dir + "components.txt");
  if (fmt.count("json") || formats.empty()) {
    ws.write(dir + "components.json", rows.dump(1) + "\n", "json", "netreport");
    files.push_back(dir + "components.json");
  }

  auto s = head("netreport");
  s["db"] = db_name(db);
  s["level"] = level_name;
  s["windows"] = rows;
  s["files"] = files;
  return s;
}

Summary step_overlay(Workspace& ws, SourceDb db, CodeScheme scheme, const std::vector<Window>& windows,
                     const Formats& formats) {
  auto fmt = or_default(formats, {"svg", "json"}, {"svg", "json"}, "overlay");
  const auto& map = ws.basemap(scheme);
  const std::string dir = "overlay/" + db_name(db) + "/" + scheme_name(scheme) + "/";
  nlohmann::ordered_json frames = nlohmann::ordered_json::array();
  std::vector<std::string> files;
  for (std::size_t i = 0; i < windows.size(); ++i) {
    auto frame = overlay::project_overlay(ws.corpus_records(db), map, windows[i]);
    auto stem = dir + pad3(i);
    if (fmt.count("svg")) {
      ws.write(stem + ".svg", overlay::render_overlay_svg(map, frame, i), "svg", "overlay");
      files.push_back(stem + ".svg");
    }
    if (fmt.count("json")) {
      ws.write(stem + ".json", overlay::frame_to_json(frame, i), "json", "overlay");
      files.push_back(stem + ".json");
    }
    if (frame.occurrences > 0) {
      auto grid = overlay::density_map(frame, map);
      ws.write(stem + ".density.txt", grid.to_text(), "txt", "overlay");
      files.push_back(stem + ".density.txt");
    }
    nlohmann::ordered_json j;
    j["window"] = windows[i].label();
    j["occurrences"] = frame.occurrences;
    j["matched_codes"] = frame.counts.size();
    j["unmatched_codes"] = frame.unmatched.size();
    j["filtered"] = frame.filtered;
    j["warnings"] = frame.warnings;
    frames.push_back(j);
  }
  auto s = head("overlay");
  s["db"] = db_name(db);
  s["scheme"] = scheme_name(scheme);
  s["basemap"] = map.id;
  s["frames"] = frames;
  s["files"] = files;
  return s;
}

Summary step_diversity(Workspace& ws, SourceDb db, CodeScheme scheme, const std::vector<Window>& windows) {
  const auto& map = ws.basemap(scheme);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& w : windows) {
    auto frame = overlay::project_overlay(ws.corpus_records(db), map, w);
    nlohmann::ordered_json j;
    j["window"] = w.label();
    if (frame.counts.empty()) {
      j["delta"] = nullptr;
      j["codes"] = 0;
    } else {
      auto report = overlay::rao_stirling(frame, map);
      j["delta"] = report.delta;
      j["codes"] = report.codes.size();
    }
    rows.push_back(j);
  }
  nlohmann::ordered_json doc;
  doc["db"] = db_name(db);
  doc["scheme"] = scheme_name(scheme);
  doc["basemap"] = map.id;
  doc["pairs"] = overlay::kPairConvention;
  doc["distance"] = "1 - cosine similarity";
  doc["windows"] = rows;
  auto rel = "diversity/" + db_name(db) + "-" + scheme_name(scheme) + ".json";
  ws.write(rel, doc.dump(1) + "\n", "json", "diversity");
  auto s = head("diversity");
  s["db"] = db_name(db);
  s["scheme"] = scheme_name(scheme);
  s["windows"] = rows;
  s["file"] = rel;
  return s;
}

Summary step_basemap_build(const std::filesystem::path& matrix_path, CodeScheme scheme, const std::string& id,
                           std::uint64_t seed, double prune_threshold, const std::filesystem::path& out) {
  auto text = io::read_file(matrix_path);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!text::trim(line).empty() && line[0] != '#') {
      header = text::split(line, '\t');
      break;
    }
  }
  if (header.size() < 2) throw ParseError("matrix header needs a code column and at least one code", line_no);
  const bool labelled = header.size() > 1 && text::to_lower_ascii(text::trim(header[1])) == "label";
  const std::size_t first = labelled ? 2 : 1;
  std::vector<std::string> codes(header.begin() + static_cast<std::ptrdiff_t>(first), header.end());
  for (auto& c : codes) c = std::string(text::trim(c));

  std::vector<std::string> labels;
  overlay::Matrix matrix;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty() || line[0] == '#') continue;
    auto cells = text::split(line, '\t');
    if (cells.size() != first + codes.size()) {
      throw ParseError("matrix row has " + std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(first + codes.size()),
                       line_no);
    }
    const auto row = matrix.size();
    if (row >= codes.size() || std::string(text::trim(cells[0])) != codes[row]) {
      throw ParseError("matrix rows must follow the header's code order", line_no);
    }
    if (labelled) labels.push_back(std::string(text::trim(cells[1])));
    std::vector<double> values;
    for (std::size_t k = first; k < cells.size(); ++k) {
      auto v = text::parse_double(text::trim(cells[k]));
      if (!v || !std::isfinite(*v) || *v < 0.0) throw ParseError("matrix cell is not a non-negative number", line_no);
      values.push_back(*v);
    }
    matrix.push_back(std::move(values));
  }
  if (matrix.size() != codes.size()) throw InputError("matrix has fewer rows than codes");

  overlay::BasemapBuildOptions opt;
  opt.id = id;
  opt.seed = seed;
  opt.prune_threshold = prune_threshold;
  auto map = overlay::build_basemap(codes, labels, matrix, scheme, opt);
  overlay::save_basemap(map, out.string());

  std::set<int> clusters;
  for (const auto& n : map.nodes) clusters.insert(n.cluster);
  auto s = head("basemap-build");
  s["id"] = map.id;
  s["scheme"] = scheme_name(scheme);
  s["nodes"] = map.nodes.size();
  s["edges"] = map.edges.size();
  s["clusters"] = clusters.size();
  s["file"] = out.string();
  return s;
}

}  // namespace estmap::cli
