#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "estmap/records/record.hpp"
#include "estmap/records/timeline.hpp"

namespace estmap::cli {

struct HarvestSettings {
  std::string endpoint;  // overridden by ESTMAP_HARVEST_ENDPOINT
  std::optional<std::filesystem::path> fixtures;
  int page_size = 100;
  double rate_limit = 3.0;
  int max_retries = 5;
  int timeout_ms = 30'000;
};

/// One case study: where its records come from, how the corpus is delineated
/// per database, and every threshold the pipeline uses. Relative paths are
/// resolved against the manifest's directory.
struct Manifest {
  std::filesystem::path path;
  std::string case_name;
  std::uint64_t seed = 1;
  std::filesystem::path output_dir;
  std::string retrieved_on = "unknown";

  /// Raw source files per database, parsed at load time.
  std::map<SourceDb, std::vector<std::filesystem::path>> inputs;
  std::optional<std::filesystem::path> mesh_vocabulary;
  /// Record store written by `ingest`; read as well when it exists.
  std::filesystem::path store;

  /// Canonical-dialect query per database, in manifest order.
  std::vector<std::pair<SourceDb, std::string>> queries;

  WindowSpec windows;

  double top_share_publications = 0.10;
  double top_share_patents = 0.25;
  double alpha = 0.05;
  double chi2_critical = 3.841;
  std::size_t min_geo_records = 20;
  double centrality_share = 0.05;
  long long min_component_size = 4;

  std::optional<std::filesystem::path> gazetteer;
  std::optional<std::filesystem::path> geo_aliases;
  std::optional<std::filesystem::path> org_aliases;
  std::map<CodeScheme, std::filesystem::path> basemaps;

  HarvestSettings harvest;

  const std::string* query_for(SourceDb db) const;
};

/// INI-style manifest. Throws ParseError for syntax errors and InputError for
/// missing keys, out-of-range thresholds or referenced files that do not
/// exist.
Manifest load_manifest(const std::filesystem::path& path);

}  // namespace estmap::cli
