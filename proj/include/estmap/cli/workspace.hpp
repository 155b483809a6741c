#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "estmap/cli/manifest.hpp"
#include "estmap/geo/gazetteer.hpp"
#include "estmap/network/aliases.hpp"
#include "estmap/overlay/basemap.hpp"
#include "estmap/records/store.hpp"

namespace estmap::cli {

struct Artifact {
  std::string path;    // relative to the output directory, '/' separators
  std::string format;  // geojson, kml, graphml, svg, json, tsv, txt
  std::string step;
};

/// Everything a subcommand needs, loaded on first use and cached.
class Workspace {
public:
  explicit Workspace(Manifest manifest);

  const Manifest& manifest() const { return manifest_; }
  const std::filesystem::path& output_dir() const { return output_dir_; }
  void set_output_dir(std::filesystem::path dir) { output_dir_ = std::move(dir); }
  std::uint64_t seed() const { return seed_; }
  void set_seed(std::uint64_t seed) { seed_ = seed; }

  /// Saved store (when present) merged with freshly parsed inputs, geocoded
  /// against the gazetteer when one is configured.
  const RecordStore& store();
  const std::vector<std::string>& ingest_warnings();

  /// Databases that have a query, in manifest order.
  std::vector<SourceDb> databases() const;
  const Corpus& corpus(SourceDb db);
  const std::vector<Record>& corpus_records(SourceDb db);

  /// Analysis windows covering every corpus.
  const std::vector<Window>& windows();
  /// Resolves a `--window` label against windows(). Throws InputError.
  Window window(std::string_view label);

  bool has_gazetteer() const { return manifest_.gazetteer.has_value(); }
  const geo::Gazetteer& gazetteer();
  const network::AliasMap* org_aliases();
  bool has_basemap(CodeScheme scheme) const { return manifest_.basemaps.count(scheme) > 0; }
  const overlay::Basemap& basemap(CodeScheme scheme);

  /// Atomically writes `bytes` under the output directory and registers it.
  std::filesystem::path write(const std::string& relative, std::string_view bytes, std::string_view format,
                              std::string_view step);
  const std::vector<Artifact>& artifacts() const { return artifacts_; }

private:
  Manifest manifest_;
  std::filesystem::path output_dir_;
  std::uint64_t seed_;
  std::optional<RecordStore> store_;
  std::vector<std::string> ingest_warnings_;
  std::map<SourceDb, Corpus> corpora_;
  std::map<SourceDb, std::vector<Record>> corpus_records_;
  std::optional<std::vector<Window>> windows_;
  std::optional<geo::Gazetteer> gazetteer_;
  std::optional<network::AliasMap> org_aliases_;
  std::map<CodeScheme, overlay::Basemap> basemaps_;
  std::vector<Artifact> artifacts_;
};

RecordKind kind_of(SourceDb db);
/// Overlay schemes that apply to a database's records.
std::vector<CodeScheme> schemes_for(SourceDb db);

}  // namespace estmap::cli
