#include <algorithm>
#include <set>

#include <json.hpp>

#include "estmap/records/parse.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/text.hpp"

namespace estmap {

namespace {

using nlohmann::json;

std::optional<long long> integer_field(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (it->is_number_integer()) return it->get<long long>();
  if (it->is_string()) return text::parse_int(it->get<std::string>());
  return std::nullopt;
}

std::vector<std::string> string_list(const json& obj, const char* key) {
  std::vector<std::string> out;
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_array()) return out;
  for (const auto& v : *it) {
    if (v.is_string()) out.push_back(v.get<std::string>());
  }
  return out;
}

}  // namespace

ParseResult parse_patent_file(std::string_view input) {
  ParseResult result;
  std::set<std::string> seen;
  std::size_t line_no = 0;
  for (auto& line : text::split(input, '\n')) {
    ++line_no;
    auto t = text::trim(line);
    if (t.empty()) continue;
    json obj;
    try {
      obj = json::parse(t);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON: ") + e.what(), line_no);
    }
    if (!obj.is_object()) throw ParseError("expected one JSON object per line", line_no);

    auto where = "line " + std::to_string(line_no);
    auto raw_id = obj.value("id", std::string{});
    if (raw_id.empty()) {
      result.warnings.push_back(where + ": patent without id, skipped");
      continue;
    }
    auto claims_it = obj.find("claims");
    if (claims_it == obj.end() || !claims_it->is_string() || claims_it->get<std::string>().empty()) {
      result.warnings.push_back(where + ": patent " + raw_id + " has no claims, skipped");
      continue;
    }
    auto year = integer_field(obj, "filing_year");
    if (!year) {
      result.warnings.push_back(where + ": patent " + raw_id + " has no usable filing year, skipped");
      continue;
    }

    Record r;
    r.id = raw_id.find(':') == std::string::npos ? "uspto:" + raw_id : raw_id;
    r.kind = RecordKind::patent;
    r.source_db = SourceDb::uspto;
    r.title = obj.value("title", std::string{});
    r.claims = claims_it->get<std::string>();
    r.year = static_cast<int>(*year);
    if (obj.contains("citation_count")) {
      auto cites = integer_field(obj, "citation_count");
      if (!cites) {
        result.warnings.push_back(where + ": patent " + raw_id + " has a non-integer citation count, skipped");
        continue;
      }
      r.citation_count = *cites;
    }
    r.authors = string_list(obj, "inventors");
    for (auto& raw : string_list(obj, "affiliations")) {
      if (!text::trim(raw).empty()) r.affiliations.push_back(parse_affiliation(raw));
    }
    for (auto& code : string_list(obj, "ipc")) {
      auto norm = normalize_ipc(code);
      if (!is_valid_ipc_code(norm)) {
        result.warnings.push_back(where + ": dropped malformed IPC code '" + code + "'");
        continue;
      }
      CodeTag tag{CodeScheme::ipc, norm};
      if (std::find(r.codes.begin(), r.codes.end(), tag) == r.codes.end()) r.codes.push_back(tag);
    }

    if (!seen.insert(r.id).second) throw ParseError("duplicate patent id " + r.id, line_no);
    auto problems = validate(r);
    if (!problems.empty()) {
      result.warnings.push_back(where + ": " + problems.front() + ", skipped");
      continue;
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

}  // namespace estmap
