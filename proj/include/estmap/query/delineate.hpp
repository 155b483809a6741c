#pragma once

#include <optional>
#include <string>

#include "estmap/query/ast.hpp"
#include "estmap/records/record.hpp"
#include "estmap/records/store.hpp"

namespace estmap::query {

struct DelineateOptions {
  std::string corpus_name = "corpus";
  std::optional<Window> years;            // inclusive range; all years when empty
  std::optional<SourceDb> source_db;      // restrict to one database's records
  std::string retrieved_on = "unknown";   // provenance date (ISO)
};

/// Every record in the store that satisfies `q` and lies in the year range.
/// Provenance keeps the query in canonical syntax.
Corpus delineate(const RecordStore& store, const Query& q, const DelineateOptions& options);

}  // namespace estmap::query
