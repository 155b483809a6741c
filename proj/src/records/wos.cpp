#include <algorithm>
#include <map>
#include <set>

#include "estmap/records/parse.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/text.hpp"

namespace estmap {

namespace {

// C1 cells: "[Author A; Author B] Org, City, Country; [Author C] Org2, ..."
std::vector<std::string> split_addresses(std::string_view cell) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (char c : cell) {
    if (c == '[') {
      ++depth;
      continue;
    }
    if (c == ']') {
      if (depth > 0) --depth;
      continue;
    }
    if (depth > 0) continue;
    if (c == ';') {
      auto t = text::trim(current);
      if (!t.empty()) out.emplace_back(t);
      current.clear();
      continue;
    }
    current += c;
  }
  auto t = text::trim(current);
  if (!t.empty()) out.emplace_back(t);
  return out;
}

}  // namespace

ParseResult parse_wos_export(std::string_view input) {
  auto lines = text::split(input, '\n');
  std::size_t header_idx = 0;
  while (header_idx < lines.size() && text::trim(lines[header_idx]).empty()) ++header_idx;
  if (header_idx == lines.size()) throw ParseError("missing header row", 1);

  auto& header_line = lines[header_idx];
  if (header_line.rfind("\xEF\xBB\xBF", 0) == 0) header_line.erase(0, 3);
  if (!header_line.empty() && header_line.back() == '\r') header_line.pop_back();

  std::map<std::string, std::size_t> column;
  auto header = text::split(header_line, '\t');
  for (std::size_t i = 0; i < header.size(); ++i) column[std::string(text::trim(header[i]))] = i;
  if (!column.count("TI") || !column.count("PY")) {
    throw ParseError("missing header row (need at least TI and PY columns)", header_idx + 1);
  }

  ParseResult result;
  std::set<std::string> seen;
  for (std::size_t li = header_idx + 1; li < lines.size(); ++li) {
    auto line = lines[li];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    const std::size_t line_no = li + 1;
    auto cells = text::split(line, '\t');
    auto cell = [&](const char* tag) -> std::string {
      auto it = column.find(tag);
      if (it == column.end() || it->second >= cells.size()) return {};
      return std::string(text::trim(cells[it->second]));
    };

    Record r;
    r.kind = RecordKind::publication;
    r.source_db = SourceDb::wos;
    auto ut = cell("UT");
    if (ut.empty()) {
      r.id = "wos:row" + std::to_string(line_no);
    } else if (ut.rfind("WOS:", 0) == 0) {
      r.id = "wos:" + ut.substr(4);
    } else {
      r.id = ut.find(':') == std::string::npos ? "wos:" + ut : ut;
    }

    auto py = text::parse_int(cell("PY"));
    if (!py) {
      result.warnings.push_back("line " + std::to_string(line_no) + ": non-integer PY '" + cell("PY") +
                                "', record skipped");
      continue;
    }
    r.year = static_cast<int>(*py);
    r.title = cell("TI");
    if (auto ab = cell("AB"); !ab.empty()) r.abstract_text = ab;
    r.authors = text::split_trimmed(cell("AU"), ';');
    for (auto& addr : split_addresses(cell("C1"))) r.affiliations.push_back(parse_affiliation(addr));
    if (auto tc = cell("TC"); !tc.empty()) {
      auto v = text::parse_int(tc);
      if (!v || *v < 0) {
        result.warnings.push_back("line " + std::to_string(line_no) + ": bad TC '" + tc + "', record skipped");
        continue;
      }
      r.citation_count = *v;
    }
    for (auto& cat : text::split_trimmed(cell("WC"), ';')) {
      CodeTag tag{CodeScheme::wos_category, cat};
      if (std::find(r.codes.begin(), r.codes.end(), tag) == r.codes.end()) r.codes.push_back(tag);
    }
    if (auto so = cell("SO"); !so.empty()) {
      r.journal = so;
      r.codes.push_back(CodeTag{CodeScheme::journal, so});
    }

    if (!seen.insert(r.id).second) throw ParseError("duplicate record id " + r.id, line_no);
    auto problems = validate(r);
    if (!problems.empty()) {
      result.warnings.push_back("line " + std::to_string(line_no) + ": " + problems.front() + ", record skipped");
      continue;
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

}  // namespace estmap
