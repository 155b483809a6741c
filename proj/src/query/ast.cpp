#include "estmap/query/ast.hpp"

#include "estmap/util/error.hpp"
#include "estmap/util/text.hpp"

namespace estmap::query {

std::string_view to_string(Field field) {
  switch (field) {
    case Field::TI: return "TI";
    case Field::AB: return "AB";
    case Field::CLM: return "CLM";
    case Field::MH: return "MH";
  }
  return "TI";
}

std::string_view to_string(Dialect dialect) {
  switch (dialect) {
    case Dialect::wos: return "wos";
    case Dialect::pubmed: return "pubmed";
    case Dialect::uspto: return "uspto";
    case Dialect::canonical: return "canonical";
  }
  return "canonical";
}

Dialect dialect_from_string(std::string_view s) {
  auto v = text::to_lower_ascii(s);
  if (v == "wos") return Dialect::wos;
  if (v == "pubmed" || v == "medline") return Dialect::pubmed;
  if (v == "uspto") return Dialect::uspto;
  if (v == "canonical") return Dialect::canonical;
  throw InputError("unknown query dialect '" + std::string(s) + "'");
}

Query Query::make_term(Field field, std::string pattern, bool is_phrase) {
  if (pattern.empty()) throw InputError("empty search term");
  Query q;
  q.kind_ = Kind::term;
  q.term_ = Term{field, std::move(pattern), is_phrase};
  return q;
}

Query Query::combine(Kind kind, std::vector<Query> children) {
  std::vector<Query> flat;
  for (auto& c : children) {
    if (c.kind_ == kind) {
      for (auto& g : c.children_) flat.push_back(std::move(g));
    } else {
      flat.push_back(std::move(c));
    }
  }
  if (flat.empty()) throw InputError("boolean group without operands");
  if (flat.size() == 1) return std::move(flat.front());
  Query q;
  q.kind_ = kind;
  q.children_ = std::move(flat);
  return q;
}

Query Query::all_of(std::vector<Query> children) { return combine(Kind::all_of, std::move(children)); }
Query Query::any_of(std::vector<Query> children) { return combine(Kind::any_of, std::move(children)); }

std::string describe(const Query& q) {
  if (q.kind() == Query::Kind::term) {
    const auto& t = q.term();
    return "Term(" + std::string(to_string(t.field)) + ",\"" + t.pattern + "\"" + (t.is_phrase ? ",phrase)" : ")");
  }
  std::string out = q.kind() == Query::Kind::all_of ? "And(" : "Or(";
  for (std::size_t i = 0; i < q.children().size(); ++i) {
    if (i) out += ',';
    out += describe(q.children()[i]);
  }
  return out + ")";
}

}  // namespace estmap::query
