#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace estmap {

enum class RecordKind { publication, patent };
enum class SourceDb { wos, medline, uspto };
enum class CodeScheme { wos_category, mesh, ipc, journal };

std::string_view to_string(RecordKind kind);
std::string_view to_string(SourceDb db);
std::string_view to_string(CodeScheme scheme);
RecordKind record_kind_from_string(std::string_view s);
SourceDb source_db_from_string(std::string_view s);
CodeScheme code_scheme_from_string(std::string_view s);

struct GeoPoint {
  double lat = 0.0;
  double lon = 0.0;

  bool operator==(const GeoPoint&) const = default;
};

struct Affiliation {
  std::string raw;
  std::optional<std::string> organisation;
  std::optional<std::string> city;
  std::optional<std::string> country;
  std::optional<GeoPoint> geocode;

  bool operator==(const Affiliation&) const = default;
};

struct CodeTag {
  CodeScheme scheme = CodeScheme::wos_category;
  std::string code;

  bool operator==(const CodeTag&) const = default;
  auto operator<=>(const CodeTag&) const = default;
};

struct Record {
  std::string id;
  RecordKind kind = RecordKind::publication;
  SourceDb source_db = SourceDb::wos;
  std::string title;
  std::optional<std::string> abstract_text;
  std::optional<std::string> claims;
  int year = 0;
  std::vector<std::string> authors;
  std::vector<Affiliation> affiliations;
  std::optional<long long> citation_count;
  std::vector<CodeTag> codes;
  std::optional<std::string> journal;
  /// MEDLINE descriptor names (qualifiers stripped). Tree numbers for the
  /// same descriptors, when a vocabulary was supplied, live in `codes`.
  std::vector<std::string> mesh_headings;

  bool operator==(const Record&) const = default;

  std::vector<std::string> codes_of(CodeScheme scheme) const;
};

inline constexpr int kMinYear = 1900;
inline constexpr int kMaxYear = 2100;

bool is_valid_mesh_tree_number(std::string_view code);
bool is_valid_ipc_code(std::string_view code);
/// Removes internal blanks ("C12N 15/11" -> "C12N15/11").
std::string normalize_ipc(std::string_view code);

/// Human-readable list of invariant violations; empty means valid.
std::vector<std::string> validate(const Record& record);

struct Window {
  int start_year = 0;
  int end_year = 0;

  bool contains(int year) const { return year >= start_year && year <= end_year; }
  std::string label() const;
  /// Parses "1998-2001"; throws InputError.
  static Window parse(std::string_view label);

  bool operator==(const Window&) const = default;
  auto operator<=>(const Window&) const = default;
};

struct Provenance {
  std::string query_text;
  SourceDb source_db = SourceDb::wos;
  std::string retrieved_on;  // ISO date

  bool operator==(const Provenance&) const = default;
};

struct Corpus {
  std::string name;
  std::set<std::string> record_ids;
  Provenance provenance;

  bool operator==(const Corpus&) const = default;
};

}  // namespace estmap
