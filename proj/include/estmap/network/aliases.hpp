#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace estmap::network {

/// Reviewed organisation-name merges: raw name -> canonical name. Lookups are
/// on folded keys. Canonical names always map to themselves, so applying the
/// map twice is the same as applying it once.
class AliasMap {
public:
  /// Tab-separated raw, canonical; '#' starts a comment line.
  static AliasMap parse(std::string_view tsv);
  static AliasMap load(const std::string& path);

  /// Throws InputError when the entry would chain (raw is some other entry's
  /// canonical name, or canonical is itself remapped).
  void add(std::string_view raw, std::string_view canonical);
  std::string apply(std::string_view name) const;
  std::size_t size() const { return entries_.size(); }

private:
  std::map<std::string, std::string> entries_;  // folded raw -> canonical
  std::map<std::string, std::string> canonical_;  // folded canonical -> canonical
};

struct MergeSuggestion {
  std::string a;
  std::string b;
  double score = 0.0;
};

/// Lower case, punctuation removed, abbreviations expanded, stop words
/// dropped; tokens sorted and deduplicated.
std::vector<std::string> org_tokens(std::string_view name);
/// Jaccard similarity of the token sets.
double org_similarity(std::string_view a, std::string_view b);

/// Candidate pairs at or above `threshold`, best first. Nothing is applied;
/// accepted pairs belong in an alias file.
std::vector<MergeSuggestion> suggest_merges(const std::vector<std::string>& names, double threshold);

}  // namespace estmap::network
