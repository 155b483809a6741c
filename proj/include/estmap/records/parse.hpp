#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "estmap/records/record.hpp"

namespace estmap {

/// Records plus the non-fatal problems met on the way (skipped rows, dropped
/// codes). Fatal problems are thrown as ParseError.
struct ParseResult {
  std::vector<Record> records;
  std::vector<std::string> warnings;
};

/// Splits a free-text address into organisation (first comma segment),
/// country (last segment) and city (the segment before the country, postal
/// tokens removed). Anything it cannot place is left empty.
Affiliation parse_affiliation(std::string_view raw);

/// Descriptor name -> MeSH tree numbers, loaded from "name<TAB>tree" rows.
class MeshVocabulary {
public:
  static MeshVocabulary parse(std::string_view tsv);
  static MeshVocabulary load(const std::string& path);

  void add(const std::string& heading, const std::string& tree_number);
  const std::vector<std::string>* tree_numbers(std::string_view heading) const;
  std::size_t size() const { return by_heading_.size(); }

private:
  std::map<std::string, std::vector<std::string>> by_heading_;  // folded heading
};

/// MEDLINE field-tagged text (PMID-, TI  -, ... with 6-space continuations).
/// MH descriptors go to `mesh_headings`; with a vocabulary they are also
/// resolved to mesh tree-number codes.
ParseResult parse_medline(std::string_view text, const MeshVocabulary* vocabulary = nullptr);

/// Tab-delimited Web of Science export with a header row of field tags.
ParseResult parse_wos_export(std::string_view text);

/// One JSON object per line: id, title, claims, filing_year,
/// citation_count, ipc[], affiliations[], inventors[].
ParseResult parse_patent_file(std::string_view text);

}  // namespace estmap
