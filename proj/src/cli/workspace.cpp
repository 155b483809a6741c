#include "estmap/cli/workspace.hpp"

#include <algorithm>

#include "estmap/query/delineate.hpp"
#include "estmap/query/parse.hpp"
#include "estmap/records/parse.hpp"
#include "estmap/records/timeline.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"

namespace estmap::cli {

RecordKind kind_of(SourceDb db) { return db == SourceDb::uspto ? RecordKind::patent : RecordKind::publication; }

std::vector<CodeScheme> schemes_for(SourceDb db) {
  switch (db) {
    case SourceDb::wos:
      return {CodeScheme::wos_category, CodeScheme::journal};
    case SourceDb::medline:
      return {CodeScheme::mesh};
    case SourceDb::uspto:
      return {CodeScheme::ipc};
  }
  return {};
}

Workspace::Workspace(Manifest manifest)
    : manifest_(std::move(manifest)), output_dir_(manifest_.output_dir), seed_(manifest_.seed) {}

const RecordStore& Workspace::store() {
  if (store_) return *store_;
  RecordStore store;
  if (std::filesystem::exists(manifest_.store)) store = RecordStore::load(manifest_.store);

  std::optional<MeshVocabulary> vocabulary;
  if (manifest_.mesh_vocabulary) vocabulary = MeshVocabulary::load(manifest_.mesh_vocabulary->string());

  for (const auto& [db, files] : manifest_.inputs) {
    for (const auto& file : files) {
      auto text = io::read_file(file);
      ParseResult parsed;
      switch (db) {
        case SourceDb::medline:
          parsed = parse_medline(text, vocabulary ? &*vocabulary : nullptr);
          break;
        case SourceDb::wos:
          parsed = parse_wos_export(text);
          break;
        case SourceDb::uspto:
          parsed = parse_patent_file(text);
          break;
      }
      for (auto& w : parsed.warnings) ingest_warnings_.push_back(file.filename().string() + ": " + w);
      if (has_gazetteer()) geo::annotate(parsed.records, gazetteer());
      store.upsert(std::move(parsed.records));
    }
  }
  store_ = std::move(store);
  return *store_;
}

const std::vector<std::string>& Workspace::ingest_warnings() {
  store();
  return ingest_warnings_;
}

std::vector<SourceDb> Workspace::databases() const {
  std::vector<SourceDb> out;
  for (const auto& [db, q] : manifest_.queries) out.push_back(db);
  return out;
}

const Corpus& Workspace::corpus(SourceDb db) {
  if (auto it = corpora_.find(db); it != corpora_.end()) return it->second;
  const auto* text = manifest_.query_for(db);
  if (!text) throw InputError("manifest has no query for " + std::string(to_string(db)));
  auto q = query::parse_query(*text, query::Dialect::canonical);
  query::DelineateOptions opt;
  opt.corpus_name = manifest_.case_name + "-" + std::string(to_string(db));
  opt.source_db = db;
  opt.retrieved_on = manifest_.retrieved_on;
  return corpora_.emplace(db, query::delineate(store(), q, opt)).first->second;
}

const std::vector<Record>& Workspace::corpus_records(SourceDb db) {
  if (auto it = corpus_records_.find(db); it != corpus_records_.end()) return it->second;
  return corpus_records_.emplace(db, store().resolve(corpus(db))).first->second;
}

const std::vector<Window>& Workspace::windows() {
  if (windows_) return *windows_;
  std::optional<int> last;
  for (auto db : databases()) {
    for (const auto& r : corpus_records(db)) last = std::max(last.value_or(r.year), r.year);
  }
  windows_ = make_windows(manifest_.windows, last);
  return *windows_;
}

Window Workspace::window(std::string_view label) {
  auto w = Window::parse(label);
  const auto& all = windows();
  if (std::find(all.begin(), all.end(), w) == all.end()) {
    std::string known;
    for (const auto& x : all) known += (known.empty() ? "" : ", ") + x.label();
    throw InputError("window " + w.label() + " is not one of the case windows (" + known + ")");
  }
  return w;
}

const geo::Gazetteer& Workspace::gazetteer() {
  if (gazetteer_) return *gazetteer_;
  if (!manifest_.gazetteer) throw InputError("manifest has no [geo] gazetteer");
  auto g = geo::Gazetteer::load(manifest_.gazetteer->string());
  if (manifest_.geo_aliases) g.load_aliases(manifest_.geo_aliases->string());
  gazetteer_ = std::move(g);
  return *gazetteer_;
}

const network::AliasMap* Workspace::org_aliases() {
  if (!manifest_.org_aliases) return nullptr;
  if (!org_aliases_) org_aliases_ = network::AliasMap::load(manifest_.org_aliases->string());
  return &*org_aliases_;
}

const overlay::Basemap& Workspace::basemap(CodeScheme scheme) {
  if (auto it = basemaps_.find(scheme); it != basemaps_.end()) return it->second;
  auto path = manifest_.basemaps.find(scheme);
  if (path == manifest_.basemaps.end()) {
    throw InputError("manifest has no basemap for " + std::string(to_string(scheme)));
  }
  auto map = overlay::load_basemap(path->second.string());
  if (map.scheme != scheme) {
    throw InputError("basemap " + path->second.string() + " is for " + std::string(to_string(map.scheme)) +
                     ", not " + std::string(to_string(scheme)));
  }
  return basemaps_.emplace(scheme, std::move(map)).first->second;
}

std::filesystem::path Workspace::write(const std::string& relative, std::string_view bytes, std::string_view format,
                                       std::string_view step) {
  auto path = output_dir_ / relative;
  io::write_file_atomic(path, bytes);
  artifacts_.push_back({relative, std::string(format), std::string(step)});
  return path;
}

}  // namespace estmap::cli
