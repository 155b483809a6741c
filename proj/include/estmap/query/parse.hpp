#pragma once

#include <string_view>

#include "estmap/query/ast.hpp"

namespace estmap::query {

/// Parses a boolean field query. Operators `and`/`or` are case-insensitive,
/// AND binds tighter than OR, parentheses group. Field syntax by dialect:
///   wos / canonical   TI=word  TI="a phrase"  TI=(x or y)
///   pubmed            word[Title]  "a phrase"[Title]
///   uspto             ACLM/(word or "a phrase$")   (`$` is the wildcard)
/// Throws ParseError whose location() is a byte offset into `text`.
Query parse_query(std::string_view text, Dialect dialect);

}  // namespace estmap::query
