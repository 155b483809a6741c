#include "estmap/overlay/diversity.hpp"

#include "estmap/util/error.hpp"

namespace estmap::overlay {

double rao_stirling(const std::vector<double>& p, const Matrix& d) {
  const std::size_t n = p.size();
  if (d.size() != n) throw InputError("distance matrix must match the proportions");
  double half = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (d[i].size() != n) throw InputError("distance matrix must be square");
    double row = 0.0;
    for (std::size_t j = i + 1; j < n; ++j) row += p[j] * d[i][j];
    half += p[i] * row;
  }
  // d is symmetric, so the ordered-pair sum is twice the unordered one.
  return 2.0 * half;
}

DiversityReport rao_stirling(const OverlayFrame& frame, const Basemap& basemap) {
  if (frame.basemap_id != basemap.id) throw InputError("frame was projected on a different basemap");
  DiversityReport r;
  r.window = frame.window;
  r.scheme = frame.scheme;
  long long total = 0;
  for (const auto& [code, n] : frame.counts) {
    if (n > 0) {
      r.codes.push_back(code);
      total += n;
    }
  }
  if (total == 0) throw InputError("diversity of an empty frame is undefined");
  std::vector<std::size_t> idx;
  for (const auto& code : r.codes) {
    r.proportions.push_back(static_cast<double>(frame.counts.at(code)) / static_cast<double>(total));
    idx.push_back(*basemap.index_of(code));
  }
  Matrix d(idx.size(), std::vector<double>(idx.size(), 0.0));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = 0; j < idx.size(); ++j) d[i][j] = basemap.distance(idx[i], idx[j]);
  }
  r.delta = rao_stirling(r.proportions, d);
  return r;
}

}  // namespace estmap::overlay
