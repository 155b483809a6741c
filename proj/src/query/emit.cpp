#include "estmap/query/emit.hpp"

namespace estmap::query {

namespace {

class Emitter {
public:
  Emitter(Dialect dialect, EmitOptions options) : dialect_(dialect), options_(options) {}

  std::string top(const Query& q) {
    auto body = node(q);
    if (dialect_ == Dialect::uspto) return "ACLM/(" + body + ")";
    return body;
  }

private:
  std::string node(const Query& q) {
    if (q.kind() == Query::Kind::term) return term(q.term());
    const bool is_and = q.kind() == Query::Kind::all_of;
    std::string out;
    for (std::size_t i = 0; i < q.children().size(); ++i) {
      const auto& child = q.children()[i];
      if (i) out += is_and ? " and " : " or ";
      auto rendered = node(child);
      if (is_and && child.kind() == Query::Kind::any_of) rendered = "(" + rendered + ")";
      out += rendered;
    }
    return out;
  }

  std::string term(const Term& t) {
    auto value = t.is_phrase ? "\"" + t.pattern + "\"" : t.pattern;
    switch (dialect_) {
      case Dialect::wos:
      case Dialect::canonical:
        return std::string(to_string(t.field)) + "=" + value;
      case Dialect::pubmed:
        switch (t.field) {
          case Field::TI: return value + "[Title]";
          case Field::AB: return value + "[Abstract]";
          case Field::MH: return value + "[MeSH Terms]";
          case Field::CLM: throw UnsupportedField("PubMed has no claims field");
        }
        break;
      case Dialect::uspto: {
        if (t.field != Field::CLM && !(t.field == Field::TI && options_.retarget_title_to_claims)) {
          throw UnsupportedField("USPTO queries search claims only; cannot emit a " + std::string(to_string(t.field)) +
                                 " term" + (t.field == Field::TI ? " without the retarget flag" : ""));
        }
        for (auto& ch : value) {
          if (ch == '*') ch = '$';
        }
        return value;
      }
    }
    return value;
  }

  Dialect dialect_;
  EmitOptions options_;
};

}  // namespace

std::string emit_query(const Query& q, Dialect dialect, EmitOptions options) {
  return Emitter(dialect, options).top(q);
}

}  // namespace estmap::query
