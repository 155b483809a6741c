#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "estmap/query/ast.hpp"
#include "estmap/records/record.hpp"

namespace estmap::query {

/// Lowercased, diacritic-folded tokens. Token characters are letters, digits,
/// `*` and `-`; hyphens are kept only inside a token ("double-stranded").
std::vector<std::string> tokenize(std::string_view text);

/// `*` matches any (possibly empty) run of characters.
bool wildcard_match(std::string_view pattern, std::string_view token);

/// True when the record satisfies the query. A term on an absent field is
/// false; phrases must match a contiguous token run.
bool evaluate(const Query& q, const Record& record);

}  // namespace estmap::query
