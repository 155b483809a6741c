#include "estmap/query/parse.hpp"

#include <optional>

#include "estmap/util/error.hpp"
#include "estmap/util/text.hpp"

namespace estmap::query {

namespace {

enum class Tok { lparen, rparen, op_and, op_or, word, phrase, field, tag, end };

struct Token {
  Tok kind = Tok::end;
  std::string text;
  std::size_t offset = 0;
};

[[noreturn]] void fail(const std::string& what, std::size_t offset) {
  throw ParseError(what, offset, ParseError::Unit::offset);
}

bool is_word_char(char c) {
  switch (c) {
    case ' ': case '\t': case '\n': case '\r':
    case '(': case ')': case '"': case '[': case ']': case '=': case '/':
      return false;
    default:
      return true;
  }
}

class Lexer {
public:
  Lexer(std::string_view src, Dialect dialect) : src_(src), dialect_(dialect) {}

  Token next() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r')) {
      ++pos_;
    }
    const std::size_t start = pos_;
    if (pos_ == src_.size()) return {Tok::end, {}, start};
    char c = src_[pos_];
    if (c == '(') {
      ++pos_;
      return {Tok::lparen, "(", start};
    }
    if (c == ')') {
      ++pos_;
      return {Tok::rparen, ")", start};
    }
    if (c == '"') {
      auto close = src_.find('"', pos_ + 1);
      if (close == std::string_view::npos) fail("unterminated phrase", start);
      auto body = std::string(src_.substr(pos_ + 1, close - pos_ - 1));
      pos_ = close + 1;
      return {Tok::phrase, body, start};
    }
    if (c == '[') {
      if (dialect_ != Dialect::pubmed) fail("field tags in brackets are PubMed syntax", start);
      auto close = src_.find(']', pos_ + 1);
      if (close == std::string_view::npos) fail("unterminated field tag", start);
      auto body = std::string(text::trim(src_.substr(pos_ + 1, close - pos_ - 1)));
      pos_ = close + 1;
      return {Tok::tag, body, start};
    }
    if (!is_word_char(c)) fail(std::string("unexpected '") + c + "'", start);
    while (pos_ < src_.size() && is_word_char(src_[pos_])) ++pos_;
    auto word = std::string(src_.substr(start, pos_ - start));
    const bool fielded_dialect = dialect_ == Dialect::wos || dialect_ == Dialect::canonical;
    if (pos_ < src_.size() && ((fielded_dialect && src_[pos_] == '=') || (dialect_ == Dialect::uspto && src_[pos_] == '/'))) {
      ++pos_;
      return {Tok::field, word, start};
    }
    auto lower = text::to_lower_ascii(word);
    if (lower == "and") return {Tok::op_and, word, start};
    if (lower == "or") return {Tok::op_or, word, start};
    return {Tok::word, word, start};
  }

private:
  std::string_view src_;
  Dialect dialect_;
  std::size_t pos_ = 0;
};

std::optional<Field> wos_field(std::string_view name) {
  auto up = text::to_lower_ascii(name);
  if (up == "ti") return Field::TI;
  if (up == "ab") return Field::AB;
  if (up == "clm") return Field::CLM;
  if (up == "mh") return Field::MH;
  return std::nullopt;
}

std::optional<Field> pubmed_field(std::string_view tag) {
  auto t = text::to_lower_ascii(tag);
  if (t == "title" || t == "ti") return Field::TI;
  if (t == "abstract" || t == "ab") return Field::AB;
  if (t == "mesh terms" || t == "mesh" || t == "mh") return Field::MH;
  return std::nullopt;
}

class Parser {
public:
  Parser(std::string_view src, Dialect dialect) : lexer_(src, dialect), dialect_(dialect) { advance(); }

  Query parse() {
    auto q = expression(std::nullopt);
    if (cur_.kind == Tok::rparen) fail("unbalanced parentheses: unexpected ')'", cur_.offset);
    if (cur_.kind != Tok::end) fail("expected 'and', 'or' or end of query near '" + cur_.text + "'", cur_.offset);
    return q;
  }

private:
  void advance() { cur_ = lexer_.next(); }

  Query expression(std::optional<Field> inherited) {
    std::vector<Query> alternatives;
    alternatives.push_back(conjunction(inherited));
    while (cur_.kind == Tok::op_or) {
      advance();
      alternatives.push_back(conjunction(inherited));
    }
    return Query::any_of(std::move(alternatives));
  }

  Query conjunction(std::optional<Field> inherited) {
    std::vector<Query> parts;
    parts.push_back(primary(inherited));
    while (cur_.kind == Tok::op_and) {
      advance();
      parts.push_back(primary(inherited));
    }
    return Query::all_of(std::move(parts));
  }

  Query group(std::optional<Field> inherited) {
    // cur_ is '('
    advance();
    auto inner = expression(inherited);
    if (cur_.kind != Tok::rparen) {
      fail(cur_.kind == Tok::end ? "unbalanced parentheses: missing ')'" : "expected ')' near '" + cur_.text + "'",
           cur_.offset);
    }
    advance();
    return inner;
  }

  Query primary(std::optional<Field> inherited) {
    switch (cur_.kind) {
      case Tok::lparen:
        return group(inherited);
      case Tok::field:
        return fielded();
      case Tok::word:
      case Tok::phrase:
        return bare_term(inherited);
      case Tok::end:
        fail("unexpected end of query", cur_.offset);
      case Tok::rparen:
        fail(inherited ? "empty term" : "unbalanced parentheses: unexpected ')'", cur_.offset);
      case Tok::op_and:
      case Tok::op_or:
        fail("operator '" + cur_.text + "' without a left operand", cur_.offset);
      case Tok::tag:
        fail("field tag without a term", cur_.offset);
    }
    fail("unexpected token", cur_.offset);
  }

  Query fielded() {
    const auto field_tok = cur_;
    Field field = Field::TI;
    if (dialect_ == Dialect::uspto) {
      if (text::to_lower_ascii(field_tok.text) != "aclm") {
        fail("USPTO queries may only search claims (ACLM/), got '" + field_tok.text + "/'", field_tok.offset);
      }
      field = Field::CLM;
    } else {
      auto f = wos_field(field_tok.text);
      if (!f) fail("unknown field '" + field_tok.text + "'", field_tok.offset);
      field = *f;
    }
    advance();
    if (cur_.kind == Tok::lparen) return group(field);
    if (cur_.kind == Tok::word || cur_.kind == Tok::phrase) return term_value(field);
    if (cur_.kind == Tok::end) fail("unexpected end of query", cur_.offset);
    fail("empty term after '" + field_tok.text + "'", cur_.offset);
  }

  Query bare_term(std::optional<Field> inherited) {
    if (dialect_ == Dialect::pubmed) {
      const auto value = cur_;
      advance();
      if (cur_.kind != Tok::tag) fail("PubMed term needs a field tag such as [Title]", value.offset);
      auto f = pubmed_field(cur_.text);
      if (!f) fail("unknown field '[" + cur_.text + "]'", cur_.offset);
      advance();
      return make(*f, value);
    }
    if (!inherited) {
      fail(dialect_ == Dialect::uspto ? "term outside ACLM/(...)" : "term without a field (write TI=...)",
           cur_.offset);
    }
    return term_value(*inherited);
  }

  Query term_value(Field field) {
    auto value = cur_;
    advance();
    return make(field, value);
  }

  Query make(Field field, const Token& value) {
    auto pattern = value.text;
    if (dialect_ == Dialect::uspto) {
      for (auto& ch : pattern) {
        if (ch == '$') ch = '*';
      }
    }
    if (text::trim(pattern).empty()) fail("empty term", value.offset);
    return Query::make_term(field, std::string(text::trim(pattern)), value.kind == Tok::phrase);
  }

  Lexer lexer_;
  Dialect dialect_;
  Token cur_;
};

}  // namespace

Query parse_query(std::string_view text, Dialect dialect) {
  if (text::trim(text).empty()) throw ParseError("empty query", 0, ParseError::Unit::offset);
  return Parser(text, dialect).parse();
}

}  // namespace estmap::query
