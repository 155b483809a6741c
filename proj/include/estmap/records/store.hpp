#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "estmap/records/record.hpp"

namespace estmap {

struct MergeReport {
  std::size_t added = 0;
  std::vector<std::string> replaced;  // ids overwritten by a later ingest
};

/// Keyed record collection persisted as JSON lines behind a versioned header
/// line. Many readers or one writer at a time.
class RecordStore {
public:
  static constexpr int kSchemaVersion = 1;

  RecordStore() = default;
  RecordStore(const RecordStore& other);
  RecordStore& operator=(const RecordStore& other);

  static RecordStore parse(std::string_view text);
  static RecordStore load(const std::filesystem::path& path);
  std::string serialize() const;
  void save(const std::filesystem::path& path) const;

  /// Last write wins for ids already present. Throws InputError if a record
  /// violates a type invariant.
  MergeReport upsert(std::vector<Record> records);

  std::optional<Record> find(const std::string& id) const;
  bool contains(const std::string& id) const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  /// Every record, in id order.
  std::vector<Record> all() const;
  /// Records of a corpus in id order; throws InputError for unknown ids.
  std::vector<Record> resolve(const Corpus& corpus) const;

private:
  mutable std::shared_mutex mutex_;
  std::map<std::string, Record> records_;
};

}  // namespace estmap
