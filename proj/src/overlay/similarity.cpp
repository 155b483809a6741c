#include "estmap/overlay/similarity.hpp"

#include <cmath>

#include "estmap/util/error.hpp"

namespace estmap::overlay {

Matrix cosine_similarity(const Matrix& m) {
  const std::size_t n = m.size();
  const std::size_t k = n ? m[0].size() : 0;
  std::vector<double> norm(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != k) throw InputError("matrix rows differ in length");
    double sq = 0.0;
    for (double v : m[i]) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("matrix entries must be finite and non-negative");
      sq += v * v;
    }
    norm[i] = std::sqrt(sq);
  }
  Matrix s(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (norm[i] == 0.0) continue;
    s[i][i] = 1.0;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (norm[j] == 0.0) continue;
      double dot = 0.0;
      for (std::size_t c = 0; c < k; ++c) dot += m[i][c] * m[j][c];
      double v = std::min(1.0, dot / (norm[i] * norm[j]));
      s[i][j] = s[j][i] = v;
    }
  }
  return s;
}

}  // namespace estmap::overlay
