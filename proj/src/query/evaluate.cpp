#include "estmap/query/evaluate.hpp"

#include <algorithm>
#include <cctype>

#include "estmap/util/text.hpp"

namespace estmap::query {

namespace {

bool is_token_char(char c) {
  auto u = static_cast<unsigned char>(c);
  return u >= 0x80 || std::isalnum(u) || c == '*' || c == '-';
}

// Tokens per searchable field, built once per record.
struct RecordText {
  std::vector<std::string> title;
  std::vector<std::string> abstract_text;
  std::vector<std::string> claims;
  std::vector<std::vector<std::string>> headings;
  bool has_abstract = false;
  bool has_claims = false;

  explicit RecordText(const Record& r)
      : title(tokenize(r.title)),
        abstract_text(r.abstract_text ? tokenize(*r.abstract_text) : std::vector<std::string>{}),
        claims(r.claims ? tokenize(*r.claims) : std::vector<std::string>{}),
        has_abstract(r.abstract_text.has_value()),
        has_claims(r.claims.has_value()) {
    for (const auto& h : r.mesh_headings) headings.push_back(tokenize(h));
  }
};

bool contains_run(const std::vector<std::string>& haystack, const std::vector<std::string>& needle) {
  if (needle.empty() || needle.size() > haystack.size()) return false;
  for (std::size_t start = 0; start + needle.size() <= haystack.size(); ++start) {
    bool all = true;
    for (std::size_t k = 0; k < needle.size() && all; ++k) all = wildcard_match(needle[k], haystack[start + k]);
    if (all) return true;
  }
  return false;
}

bool matches(const Term& t, const RecordText& rt) {
  // A single-token pattern is a run of length one, so words and phrases share
  // the same contiguous-run test.
  auto needle = tokenize(t.pattern);
  switch (t.field) {
    case Field::TI: return contains_run(rt.title, needle);
    case Field::AB: return rt.has_abstract && contains_run(rt.abstract_text, needle);
    case Field::CLM: return rt.has_claims && contains_run(rt.claims, needle);
    case Field::MH:
      return std::any_of(rt.headings.begin(), rt.headings.end(),
                         [&](const std::vector<std::string>& h) { return contains_run(h, needle); });
  }
  return false;
}

bool eval(const Query& q, const RecordText& rt) {
  switch (q.kind()) {
    case Query::Kind::term:
      return matches(q.term(), rt);
    case Query::Kind::all_of:
      return std::all_of(q.children().begin(), q.children().end(), [&](const Query& c) { return eval(c, rt); });
    case Query::Kind::any_of:
      return std::any_of(q.children().begin(), q.children().end(), [&](const Query& c) { return eval(c, rt); });
  }
  return false;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view input) {
  auto folded = text::fold_key(input);
  std::vector<std::string> tokens;
  std::string cur;
  auto flush = [&] {
    auto b = cur.find_first_not_of('-');
    auto e = cur.find_last_not_of('-');
    if (b != std::string::npos) tokens.push_back(cur.substr(b, e - b + 1));
    cur.clear();
  };
  for (char c : folded) {
    if (is_token_char(c)) {
      cur += c;
    } else {
      flush();
    }
  }
  flush();
  return tokens;
}

bool wildcard_match(std::string_view pattern, std::string_view token) {
  std::size_t p = 0;
  std::size_t t = 0;
  std::size_t star = std::string_view::npos;
  std::size_t resume = 0;
  while (t < token.size()) {
    if (p < pattern.size() && pattern[p] != '*' && pattern[p] == token[t]) {
      ++p;
      ++t;
    } else if (p < pattern.size() && pattern[p] == '*') {
      star = p++;
      resume = t;
    } else if (star != std::string_view::npos) {
      p = star + 1;
      t = ++resume;
    } else {
      return false;
    }
  }
  while (p < pattern.size() && pattern[p] == '*') ++p;
  return p == pattern.size();
}

bool evaluate(const Query& q, const Record& record) { return eval(q, RecordText(record)); }

}  // namespace estmap::query
