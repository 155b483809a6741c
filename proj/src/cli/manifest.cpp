#include "estmap/cli/manifest.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <type_traits>

#include "estmap/util/error.hpp"
#include "estmap/util/text.hpp"

namespace estmap::cli {

namespace pt = boost::property_tree;

const std::string* Manifest::query_for(SourceDb db) const {
  for (const auto& [d, q] : queries) {
    if (d == db) return &q;
  }
  return nullptr;
}

namespace {

class Reader {
public:
  Reader(const pt::ptree& tree, std::filesystem::path base) : tree_(tree), base_(std::move(base)) {}

  std::optional<std::string> get(const std::string& key) const {
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
    if (!v) return std::nullopt;
    auto t = std::string(text::trim(*v));
    if (t.empty()) return std::nullopt;
    return t;
  }

  std::string require(const std::string& key) const {
    auto v = get(key);
    if (!v) throw InputError("manifest is missing '" + key + "'");
    return *v;
  }

  template <class T>
  T number(const std::string& key, T fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    if constexpr (std::is_floating_point_v<T>) {
      auto d = text::parse_double(*v);
      if (!d) throw InputError("manifest value '" + key + "' is not a number: " + *v);
      return static_cast<T>(*d);
    } else {
      auto i = text::parse_int(*v);
      if (!i) throw InputError("manifest value '" + key + "' is not an integer: " + *v);
      return static_cast<T>(*i);
    }
  }

  std::filesystem::path path(const std::string& value) const {
    std::filesystem::path p(value);
    return p.is_absolute() ? p : base_ / p;
  }

  std::optional<std::filesystem::path> existing_file(const std::string& key) const {
    auto v = get(key);
    if (!v) return std::nullopt;
    auto p = path(*v);
    if (!std::filesystem::exists(p)) throw InputError("manifest '" + key + "' points to a missing file: " + p.string());
    return p;
  }

  const pt::ptree* section(const std::string& name) const {
    auto it = tree_.find(name);
    return it == tree_.not_found() ? nullptr : &it->second;
  }

private:
  const pt::ptree& tree_;
  std::filesystem::path base_;
};

void check_share(double v, const char* what) {
  if (!(v > 0.0 && v < 1.0)) throw InputError(std::string(what) + " must lie strictly between 0 and 1");
}

}  // namespace

Manifest load_manifest(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw InputError("manifest not found: " + path.string());
  pt::ptree tree;
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw ParseError("manifest: " + e.message(), e.line());
  }
  Manifest m;
  m.path = path;
  Reader r(tree, path.parent_path());

  m.case_name = r.require("case.name");
  if (m.case_name.find_first_of("/\\") != std::string::npos || m.case_name == "." || m.case_name == "..") {
    throw InputError("case name must be a single path segment: " + m.case_name);
  }
  m.seed = r.number<std::uint64_t>("case.seed", 1);
  m.output_dir = r.path(r.get("case.output").value_or("out/" + m.case_name));
  m.retrieved_on = r.get("case.retrieved_on").value_or("unknown");
  m.store = r.path(r.get("case.store").value_or((m.output_dir / "records.jsonl").string()));

  if (const auto* inputs = r.section("inputs")) {
    for (const auto& [key, value] : *inputs) {
      if (key == "mesh_vocabulary") continue;
      auto db = source_db_from_string(key);
      for (const auto& file : text::split_trimmed(value.data(), ',')) {
        auto p = r.path(file);
        if (!std::filesystem::exists(p)) throw InputError("input file for " + key + " is missing: " + p.string());
        m.inputs[db].push_back(p);
      }
    }
  }
  m.mesh_vocabulary = r.existing_file("inputs.mesh_vocabulary");

  if (const auto* queries = r.section("queries")) {
    for (const auto& [key, value] : *queries) {
      auto q = std::string(text::trim(value.data()));
      if (q.empty()) throw InputError("empty query for " + key);
      m.queries.emplace_back(source_db_from_string(key), q);
    }
  }
  if (m.queries.empty()) throw InputError("manifest has no [queries]");

  m.windows.width_years = r.number<int>("windows.width", 5);
  m.windows.anchor_year = r.number<int>("windows.anchor", 0);
  if (m.windows.width_years < 1) throw InputError("window width must be at least 1");
  if (m.windows.anchor_year < kMinYear || m.windows.anchor_year > kMaxYear) {
    throw InputError("windows.anchor must be a year between " + std::to_string(kMinYear) + " and " +
                     std::to_string(kMaxYear));
  }
  if (r.get("windows.end")) m.windows.end_year = r.number<int>("windows.end", 0);
  if (auto first = r.get("windows.first")) m.windows.first_window = Window::parse(*first);

  m.top_share_publications = r.number("thresholds.top_share_publications", m.top_share_publications);
  m.top_share_patents = r.number("thresholds.top_share_patents", m.top_share_patents);
  m.alpha = r.number("thresholds.alpha", m.alpha);
  m.chi2_critical = r.number("thresholds.chi2_critical", m.chi2_critical);
  m.min_geo_records = r.number<std::size_t>("thresholds.min_geo_records", m.min_geo_records);
  m.centrality_share = r.number("thresholds.centrality_share", m.centrality_share);
  m.min_component_size = r.number<long long>("thresholds.min_component_size", m.min_component_size);
  check_share(m.top_share_publications, "top_share_publications");
  check_share(m.top_share_patents, "top_share_patents");
  check_share(m.alpha, "alpha");
  if (!(m.centrality_share > 0.0 && m.centrality_share <= 1.0)) throw InputError("centrality_share must lie in (0, 1]");
  if (m.min_component_size < 1) throw InputError("min_component_size must be at least 1");

  m.gazetteer = r.existing_file("geo.gazetteer");
  m.geo_aliases = r.existing_file("geo.aliases");
  m.org_aliases = r.existing_file("network.aliases");
  if (const auto* maps = r.section("basemaps")) {
    for (const auto& [key, value] : *maps) {
      auto p = r.existing_file("basemaps." + key);
      if (p) m.basemaps[code_scheme_from_string(key)] = *p;
    }
  }

  m.harvest.endpoint = r.get("harvest.endpoint").value_or("");
  if (auto fx = r.get("harvest.fixtures")) m.harvest.fixtures = r.path(*fx);
  m.harvest.page_size = r.number("harvest.page_size", m.harvest.page_size);
  m.harvest.rate_limit = r.number("harvest.rate_limit", m.harvest.rate_limit);
  m.harvest.max_retries = r.number("harvest.max_retries", m.harvest.max_retries);
  m.harvest.timeout_ms = r.number("harvest.timeout_ms", m.harvest.timeout_ms);
  if (m.harvest.page_size < 1) throw InputError("harvest.page_size must be at least 1");
  if (!(m.harvest.rate_limit > 0.0)) throw InputError("harvest.rate_limit must be positive");
  return m;
}

}  // namespace estmap::cli
