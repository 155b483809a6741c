#include "estmap/query/delineate.hpp"

#include "estmap/query/emit.hpp"
#include "estmap/query/evaluate.hpp"

namespace estmap::query {

Corpus delineate(const RecordStore& store, const Query& q, const DelineateOptions& options) {
  Corpus corpus;
  corpus.name = options.corpus_name;
  corpus.provenance.query_text = emit_query(q, Dialect::canonical);
  corpus.provenance.source_db = options.source_db.value_or(SourceDb::wos);
  corpus.provenance.retrieved_on = options.retrieved_on;
  for (const auto& r : store.all()) {
    if (options.source_db && r.source_db != *options.source_db) continue;
    if (options.years && !options.years->contains(r.year)) continue;
    if (evaluate(q, r)) corpus.record_ids.insert(r.id);
  }
  return corpus;
}

}  // namespace estmap::query
