#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace estmap::query {

/// Searchable record fields: title, abstract, claims, MeSH headings.
enum class Field { TI, AB, CLM, MH };

enum class Dialect { wos, pubmed, uspto, canonical };

std::string_view to_string(Field field);
std::string_view to_string(Dialect dialect);
Dialect dialect_from_string(std::string_view s);

struct Term {
  Field field = Field::TI;
  std::string pattern;  // `*` is the wildcard in every dialect internally
  bool is_phrase = false;

  bool operator==(const Term&) const = default;
};

/// Boolean expression tree. And/Or nodes hold at least two children and never
/// a direct child of their own kind (nested same-operator groups are
/// flattened on construction).
class Query {
public:
  enum class Kind { all_of, any_of, term };

  static Query make_term(Field field, std::string pattern, bool is_phrase = false);
  static Query all_of(std::vector<Query> children);
  static Query any_of(std::vector<Query> children);

  Kind kind() const { return kind_; }
  const std::vector<Query>& children() const { return children_; }
  /// Only meaningful when kind() == Kind::term.
  const Term& term() const { return term_; }

  bool operator==(const Query&) const = default;

private:
  static Query combine(Kind kind, std::vector<Query> children);

  Kind kind_ = Kind::term;
  std::vector<Query> children_;
  Term term_;
};

/// Compact debug form: Or(Term(TI,"siRNA"),Term(TI,"RNA interference",phrase)).
std::string describe(const Query& q);

}  // namespace estmap::query
