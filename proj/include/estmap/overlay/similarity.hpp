#pragma once

#include <vector>

namespace estmap::overlay {

using Matrix = std::vector<std::vector<double>>;

/// Row-wise cosine similarity. Zero rows are 0 against everything, including
/// themselves; other diagonal entries are exactly 1.
Matrix cosine_similarity(const Matrix& m);

}  // namespace estmap::overlay
