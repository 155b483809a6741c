#include "estmap/network/aliases.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"
#include "estmap/util/text.hpp"

namespace estmap::network {

AliasMap AliasMap::parse(std::string_view tsv) {
  AliasMap m;
  std::size_t line_no = 0;
  for (auto& line : text::split(tsv, '\n')) {
    ++line_no;
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cols = text::split(t, '\t');
    if (cols.size() != 2) throw ParseError("alias row needs raw and canonical names", line_no);
    auto raw = text::trim(cols[0]);
    auto canonical = text::trim(cols[1]);
    if (raw.empty() || canonical.empty()) throw ParseError("alias row has an empty name", line_no);
    try {
      m.add(raw, canonical);
    } catch (const InputError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return m;
}

AliasMap AliasMap::load(const std::string& path) { return parse(io::read_file(path)); }

void AliasMap::add(std::string_view raw, std::string_view canonical) {
  auto raw_key = text::fold_key(raw);
  auto canon_key = text::fold_key(canonical);
  if (canon_key.empty()) throw InputError("canonical name must not be empty");
  if (raw_key != canon_key && canonical_.count(raw_key)) {
    throw InputError("'" + std::string(raw) + "' is already a canonical name");
  }
  if (auto it = entries_.find(canon_key); it != entries_.end() && text::fold_key(it->second) != canon_key) {
    throw InputError("'" + std::string(canonical) + "' is itself mapped to '" + it->second + "'");
  }
  if (auto it = entries_.find(raw_key); it != entries_.end() && text::fold_key(it->second) != canon_key) {
    throw InputError("'" + std::string(raw) + "' already maps to '" + it->second + "'");
  }
  std::string canon(canonical);
  entries_[raw_key] = canon;
  entries_[canon_key] = canon;
  canonical_[canon_key] = canon;
}

std::string AliasMap::apply(std::string_view name) const {
  auto it = entries_.find(text::fold_key(name));
  return it == entries_.end() ? std::string(text::trim(name)) : it->second;
}

namespace {

const std::map<std::string, std::string>& abbreviations() {
  static const std::map<std::string, std::string> table = {
      {"univ", "university"},   {"inst", "institute"},     {"natl", "national"},     {"ctr", "center"},
      {"cent", "center"},       {"centre", "center"},      {"hosp", "hospital"},     {"dept", "department"},
      {"coll", "college"},      {"lab", "laboratory"},     {"labs", "laboratory"},   {"sch", "school"},
      {"med", "medical"},       {"res", "research"},       {"sci", "science"},       {"technol", "technology"},
      {"corp", "corporation"},  {"co", "company"},         {"ltd", "limited"},       {"inc", "incorporated"},
      {"assoc", "association"}, {"fdn", "foundation"},     {"found", "foundation"},  {"biol", "biology"},
      {"chem", "chemistry"},    {"pharmaceut", "pharmaceutical"}, {"acad", "academy"}, {"int", "international"},
  };
  return table;
}

const std::set<std::string>& stop_words() {
  static const std::set<std::string> words = {"of", "the", "and", "for", "at", "in", "de", "di", "la", "le", "du"};
  return words;
}

}  // namespace

std::vector<std::string> org_tokens(std::string_view name) {
  std::string folded = text::fold_key(name);
  for (auto& c : folded) {
    if (!std::isalnum(static_cast<unsigned char>(c))) c = ' ';
  }
  std::set<std::string> tokens;
  for (auto& t : text::split_trimmed(folded, ' ')) {
    auto it = abbreviations().find(t);
    std::string word = it == abbreviations().end() ? t : it->second;
    if (!stop_words().count(word)) tokens.insert(std::move(word));
  }
  return {tokens.begin(), tokens.end()};
}

namespace {

double jaccard(const std::vector<std::string>& ta, const std::vector<std::string>& tb) {
  if (ta.empty() || tb.empty()) return 0.0;
  std::vector<std::string> common;
  std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(), std::back_inserter(common));
  auto uni = ta.size() + tb.size() - common.size();
  return static_cast<double>(common.size()) / static_cast<double>(uni);
}

}  // namespace

double org_similarity(std::string_view a, std::string_view b) {
  if (text::fold_key(a) == text::fold_key(b)) return 1.0;
  return jaccard(org_tokens(a), org_tokens(b));
}

std::vector<MergeSuggestion> suggest_merges(const std::vector<std::string>& names, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw InputError("similarity threshold must lie in (0, 1]");
  std::set<std::string> distinct;
  for (const auto& n : names) {
    auto t = std::string(text::trim(n));
    if (!t.empty()) distinct.insert(t);
  }
  std::vector<std::string> list(distinct.begin(), distinct.end());
  std::vector<std::vector<std::string>> tokens;
  for (const auto& n : list) tokens.push_back(org_tokens(n));

  std::vector<MergeSuggestion> out;
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      double score = text::fold_key(list[i]) == text::fold_key(list[j]) ? 1.0 : jaccard(tokens[i], tokens[j]);
      if (score >= threshold) out.push_back({list[i], list[j], score});
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.score > y.score; });
  return out;
}

}  // namespace estmap::network
