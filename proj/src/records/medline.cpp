#include <algorithm>
#include <cctype>
#include <set>

#include "estmap/records/parse.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/text.hpp"

namespace estmap {

namespace {

struct Field {
  std::string tag;
  std::string value;
  std::size_t line = 0;
};

struct Entry {
  std::vector<Field> fields;
  std::size_t first_line = 0;
};

bool is_tag_line(std::string_view line) {
  if (line.size() < 5 || line[4] != '-') return false;
  if (line.size() > 5 && line[5] != ' ') return false;
  if (!std::isalnum(static_cast<unsigned char>(line[0]))) return false;
  for (std::size_t i = 0; i < 4; ++i) {
    auto c = static_cast<unsigned char>(line[i]);
    if (!(std::isupper(c) || std::isdigit(c) || c == ' ')) return false;
  }
  return true;
}

// "RNA Interference/*genetics" -> "RNA Interference"
std::string strip_mesh_qualifiers(std::string_view heading) {
  auto slash = heading.find('/');
  if (slash != std::string_view::npos) heading = heading.substr(0, slash);
  std::string out;
  for (char c : heading) {
    if (c != '*') out += c;
  }
  return std::string(text::trim(out));
}

void push_unique(std::vector<std::string>& v, std::string s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(std::move(s));
}

}  // namespace

ParseResult parse_medline(std::string_view input, const MeshVocabulary* vocabulary) {
  std::vector<Entry> entries;
  Entry current;
  auto flush = [&] {
    if (!current.fields.empty()) entries.push_back(std::move(current));
    current = Entry{};
  };

  std::size_t line_no = 0;
  for (auto line : text::split(input, '\n')) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (text::trim(line).empty()) {
      flush();
      continue;
    }
    if (line.front() == ' ' || line.front() == '\t') {
      if (current.fields.empty()) throw ParseError("continuation line without a field", line_no);
      auto& value = current.fields.back().value;
      auto more = text::trim(line);
      if (!value.empty()) value += ' ';
      value += more;
      continue;
    }
    if (!is_tag_line(line)) throw ParseError("malformed tag line '" + line + "'", line_no);
    auto tag = std::string(text::trim(std::string_view(line).substr(0, 4)));
    auto value = line.size() > 6 ? std::string(text::trim(std::string_view(line).substr(6))) : std::string{};
    // Exports without blank separators still start every entry with PMID.
    if (tag == "PMID" && !current.fields.empty()) flush();
    if (current.fields.empty()) current.first_line = line_no;
    current.fields.push_back(Field{tag, value, line_no});
  }
  flush();

  ParseResult result;
  std::set<std::string> seen;
  for (const auto& entry : entries) {
    Record r;
    r.kind = RecordKind::publication;
    r.source_db = SourceDb::medline;
    std::optional<std::string> pmid;
    std::optional<std::string> dp;
    std::optional<std::string> jt;
    std::optional<std::string> ta;
    for (const auto& f : entry.fields) {
      if (f.tag == "PMID") {
        pmid = f.value;
      } else if (f.tag == "TI") {
        r.title = f.value;
      } else if (f.tag == "AB") {
        r.abstract_text = f.value;
      } else if (f.tag == "AU") {
        if (!f.value.empty()) r.authors.push_back(f.value);
      } else if (f.tag == "AD") {
        if (text::trim(f.value).empty()) continue;
        auto aff = parse_affiliation(f.value);
        bool dup = std::any_of(r.affiliations.begin(), r.affiliations.end(),
                               [&](const Affiliation& a) { return a.raw == aff.raw; });
        if (!dup) r.affiliations.push_back(std::move(aff));
      } else if (f.tag == "DP") {
        dp = f.value;
      } else if (f.tag == "MH") {
        auto heading = strip_mesh_qualifiers(f.value);
        if (!heading.empty()) push_unique(r.mesh_headings, heading);
      } else if (f.tag == "JT") {
        jt = f.value;
      } else if (f.tag == "TA") {
        ta = f.value;
      }
    }

    if (!pmid || pmid->empty()) throw ParseError("entry without PMID", entry.first_line);
    r.id = "medline:" + *pmid;
    if (!seen.insert(r.id).second) throw ParseError("duplicate PMID " + *pmid, entry.first_line);

    auto year = dp ? text::first_four_digit_run(*dp) : std::nullopt;
    if (!year) {
      result.warnings.push_back(r.id + ": no 4-digit year in DP, entry skipped (line " +
                                std::to_string(entry.first_line) + ")");
      continue;
    }
    r.year = *year;
    if (jt) {
      r.journal = *jt;
    } else if (ta) {
      r.journal = *ta;
    }
    if (vocabulary) {
      for (const auto& heading : r.mesh_headings) {
        if (const auto* trees = vocabulary->tree_numbers(heading)) {
          for (const auto& t : *trees) {
            CodeTag tag{CodeScheme::mesh, t};
            if (std::find(r.codes.begin(), r.codes.end(), tag) == r.codes.end()) r.codes.push_back(tag);
          }
        }
      }
    }
    auto problems = validate(r);
    if (!problems.empty()) {
      result.warnings.push_back(r.id + ": " + problems.front() + ", entry skipped");
      continue;
    }
    result.records.push_back(std::move(r));
  }
  return result;
}

}  // namespace estmap
