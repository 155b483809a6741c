#include "estmap/records/record.hpp"

#include <regex>

#include "estmap/util/error.hpp"
#include "estmap/util/text.hpp"

namespace estmap {

std::string_view to_string(RecordKind kind) {
  return kind == RecordKind::patent ? "patent" : "publication";
}

std::string_view to_string(SourceDb db) {
  switch (db) {
    case SourceDb::wos: return "wos";
    case SourceDb::medline: return "medline";
    case SourceDb::uspto: return "uspto";
  }
  return "wos";
}

std::string_view to_string(CodeScheme scheme) {
  switch (scheme) {
    case CodeScheme::wos_category: return "wos_category";
    case CodeScheme::mesh: return "mesh";
    case CodeScheme::ipc: return "ipc";
    case CodeScheme::journal: return "journal";
  }
  return "wos_category";
}

RecordKind record_kind_from_string(std::string_view s) {
  if (s == "publication") return RecordKind::publication;
  if (s == "patent") return RecordKind::patent;
  throw InputError("unknown record kind '" + std::string(s) + "'");
}

SourceDb source_db_from_string(std::string_view s) {
  auto v = text::to_lower_ascii(s);
  if (v == "wos") return SourceDb::wos;
  if (v == "medline" || v == "pubmed") return SourceDb::medline;
  if (v == "uspto") return SourceDb::uspto;
  throw InputError("unknown source database '" + std::string(s) + "'");
}

CodeScheme code_scheme_from_string(std::string_view s) {
  if (s == "wos_category") return CodeScheme::wos_category;
  if (s == "mesh") return CodeScheme::mesh;
  if (s == "ipc") return CodeScheme::ipc;
  if (s == "journal") return CodeScheme::journal;
  throw InputError("unknown code scheme '" + std::string(s) + "'");
}

std::vector<std::string> Record::codes_of(CodeScheme scheme) const {
  std::vector<std::string> out;
  for (const auto& c : codes) {
    if (c.scheme == scheme) out.push_back(c.code);
  }
  return out;
}

bool is_valid_mesh_tree_number(std::string_view code) {
  static const std::regex pattern(R"([A-Z][0-9]{2}(\.[0-9]{3})*)");
  return std::regex_match(code.begin(), code.end(), pattern);
}

bool is_valid_ipc_code(std::string_view code) {
  // section, class, subclass, main group / subgroup; shorter prefixes are the
  // truncated levels used by patent maps.
  static const std::regex pattern(R"([A-H]([0-9]{2}([A-Z]([0-9]{1,4}(/[0-9]{1,6})?)?)?)?)");
  return std::regex_match(code.begin(), code.end(), pattern);
}

std::string normalize_ipc(std::string_view code) {
  std::string out;
  for (char c : code) {
    if (c != ' ' && c != '\t') out += c;
  }
  return out;
}

std::vector<std::string> validate(const Record& r) {
  std::vector<std::string> problems;
  if (r.id.empty()) problems.emplace_back("empty id");
  if (r.year < kMinYear || r.year > kMaxYear) {
    problems.push_back("year " + std::to_string(r.year) + " outside [1900, 2100]");
  }
  if (r.citation_count && *r.citation_count < 0) problems.emplace_back("negative citation count");
  if (r.claims && r.kind != RecordKind::patent) problems.emplace_back("claims on a non-patent record");
  for (const auto& a : r.affiliations) {
    if (text::trim(a.raw).empty()) problems.emplace_back("empty affiliation");
    if (a.geocode) {
      if (a.geocode->lat < -90.0 || a.geocode->lat > 90.0) problems.emplace_back("latitude out of range");
      if (a.geocode->lon < -180.0 || a.geocode->lon > 180.0) problems.emplace_back("longitude out of range");
    }
  }
  for (const auto& c : r.codes) {
    if (c.code.empty()) {
      problems.emplace_back("empty classification code");
    } else if (c.scheme == CodeScheme::mesh && !is_valid_mesh_tree_number(c.code)) {
      problems.push_back("malformed MeSH tree number '" + c.code + "'");
    } else if (c.scheme == CodeScheme::ipc && !is_valid_ipc_code(c.code)) {
      problems.push_back("malformed IPC code '" + c.code + "'");
    }
  }
  return problems;
}

std::string Window::label() const {
  return std::to_string(start_year) + "-" + std::to_string(end_year);
}

Window Window::parse(std::string_view label) {
  auto parts = text::split(label, '-');
  if (parts.size() != 2) throw InputError("window label must look like 1998-2001: '" + std::string(label) + "'");
  auto a = text::parse_int(parts[0]);
  auto b = text::parse_int(parts[1]);
  if (!a || !b || *a > *b) throw InputError("bad window label '" + std::string(label) + "'");
  return Window{static_cast<int>(*a), static_cast<int>(*b)};
}

}  // namespace estmap
