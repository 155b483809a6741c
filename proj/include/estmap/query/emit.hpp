#pragma once

#include <string>

#include "estmap/query/ast.hpp"
#include "estmap/util/error.hpp"

namespace estmap::query {

/// A term's field has no spelling in the target dialect.
class UnsupportedField : public Error {
public:
  using Error::Error;
};

struct EmitOptions {
  /// USPTO only: rewrite TI terms as claims searches instead of failing.
  bool retarget_title_to_claims = false;
};

/// Renders `q` in `dialect` with lowercase operators and the minimum
/// parentheses needed under AND-over-OR precedence. The result parses back
/// (same dialect) to an equal tree.
std::string emit_query(const Query& q, Dialect dialect, EmitOptions options = {});

}  // namespace estmap::query
