#include <cctype>

#include "estmap/records/parse.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"
#include "estmap/util/text.hpp"

namespace estmap {

namespace {

bool has_digit(std::string_view s) {
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) return true;
  }
  return false;
}

std::string strip_postal_tokens(std::string_view segment) {
  std::vector<std::string> kept;
  for (auto& tok : text::split_trimmed(segment, ' ')) {
    if (!has_digit(tok)) kept.push_back(tok);
  }
  return text::join(kept, " ");
}

std::string strip_trailing_period(std::string_view s) {
  s = text::trim(s);
  while (!s.empty() && (s.back() == '.' || s.back() == ';')) s.remove_suffix(1);
  return std::string(text::trim(s));
}

}  // namespace

Affiliation parse_affiliation(std::string_view raw) {
  Affiliation a;
  a.raw = std::string(text::trim(raw));
  auto segments = text::split_trimmed(strip_trailing_period(raw), ',');
  if (segments.empty()) return a;
  a.organisation = segments.front();
  if (segments.size() >= 2) {
    auto country = strip_postal_tokens(segments.back());
    // "MA 02138 USA" style: the country is the last word.
    auto words = text::split_trimmed(segments.back(), ' ');
    if (has_digit(segments.back()) && !words.empty()) country = words.back();
    if (!country.empty()) a.country = country;
  }
  // Walk left from the segment before the country, skipping two-letter
  // state/province codes ("Boston, MA 02115, USA").
  for (std::size_t i = segments.size() >= 3 ? segments.size() - 2 : 0; i >= 1; --i) {
    auto city = strip_postal_tokens(segments[i]);
    if (city.empty()) continue;
    bool state_code = city.size() == 2 && std::isupper(static_cast<unsigned char>(city[0])) &&
                      std::isupper(static_cast<unsigned char>(city[1]));
    if (state_code && i > 1) continue;
    a.city = city;
    break;
  }
  return a;
}

MeshVocabulary MeshVocabulary::parse(std::string_view tsv) {
  MeshVocabulary vocab;
  std::size_t line_no = 0;
  for (auto& line : text::split(tsv, '\n')) {
    ++line_no;
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cols = text::split(t, '\t');
    if (cols.size() != 2) throw ParseError("MeSH vocabulary row needs 2 tab-separated columns", line_no);
    auto tree = std::string(text::trim(cols[1]));
    if (!is_valid_mesh_tree_number(tree)) throw ParseError("malformed tree number '" + tree + "'", line_no);
    vocab.add(std::string(text::trim(cols[0])), tree);
  }
  return vocab;
}

MeshVocabulary MeshVocabulary::load(const std::string& path) { return parse(io::read_file(path)); }

void MeshVocabulary::add(const std::string& heading, const std::string& tree_number) {
  auto& trees = by_heading_[text::fold_key(heading)];
  for (const auto& t : trees) {
    if (t == tree_number) return;
  }
  trees.push_back(tree_number);
}

const std::vector<std::string>* MeshVocabulary::tree_numbers(std::string_view heading) const {
  auto it = by_heading_.find(text::fold_key(heading));
  return it == by_heading_.end() ? nullptr : &it->second;
}

}  // namespace estmap
