#include "estmap/records/timeline.hpp"

#include <algorithm>

#include "estmap/util/error.hpp"

namespace estmap {

std::vector<Window> make_windows(const WindowSpec& spec, std::optional<int> last_record_year) {
  if (spec.width_years < 1) throw InputError("window width must be at least one year");
  if (spec.first_window) {
    const auto& fw = *spec.first_window;
    if (fw.start_year > fw.end_year) throw InputError("first window " + fw.label() + " is inverted");
    if (fw.end_year >= spec.anchor_year) {
      throw InputError("first window " + fw.label() + " overlaps the regular sequence starting " +
                       std::to_string(spec.anchor_year));
    }
  }
  std::vector<Window> windows;
  if (spec.first_window) windows.push_back(*spec.first_window);
  auto last = spec.end_year ? spec.end_year : last_record_year;
  if (!last) return windows;
  for (int start = spec.anchor_year; start <= *last; start += spec.width_years) {
    windows.push_back(Window{start, start + spec.width_years - 1});
  }
  return windows;
}

WindowPartition window_partition(std::span<const Record> records, const WindowSpec& spec) {
  std::optional<int> last_year;
  for (const auto& r : records) last_year = std::max(last_year.value_or(r.year), r.year);

  WindowPartition part;
  for (const auto& w : make_windows(spec, last_year)) part.bins.push_back(WindowBin{w, {}});

  std::vector<const Record*> sorted;
  sorted.reserve(records.size());
  for (const auto& r : records) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(), [](const Record* a, const Record* b) { return a->id < b->id; });

  for (const auto* r : sorted) {
    auto bin = std::find_if(part.bins.begin(), part.bins.end(),
                            [&](const WindowBin& b) { return b.window.contains(r->year); });
    if (bin == part.bins.end()) {
      part.excluded.push_back(r->id);
    } else {
      bin->record_ids.push_back(r->id);
    }
  }
  return part;
}

std::vector<Record> records_in(std::span<const Record> records, const Window& window) {
  std::vector<Record> out;
  for (const auto& r : records) {
    if (window.contains(r.year)) out.push_back(r);
  }
  return out;
}

std::map<int, std::size_t> yearly_counts(std::span<const Record> records) {
  std::map<int, std::size_t> counts;
  if (records.empty()) return counts;
  auto [lo, hi] = std::minmax_element(records.begin(), records.end(),
                                      [](const Record& a, const Record& b) { return a.year < b.year; });
  for (int y = lo->year; y <= hi->year; ++y) counts[y] = 0;
  for (const auto& r : records) ++counts[r.year];
  return counts;
}

TrendComparison compare_trends(std::span<const Record> a, std::span<const Record> b) {
  auto ca = yearly_counts(a);
  auto cb = yearly_counts(b);
  TrendComparison out;
  if (ca.empty() && cb.empty()) return out;
  int lo = std::min(ca.empty() ? cb.begin()->first : ca.begin()->first,
                    cb.empty() ? ca.begin()->first : cb.begin()->first);
  int hi = std::max(ca.empty() ? cb.rbegin()->first : ca.rbegin()->first,
                    cb.empty() ? ca.rbegin()->first : cb.rbegin()->first);
  for (int y = lo; y <= hi; ++y) {
    out.years.push_back(y);
    auto ia = ca.find(y);
    auto ib = cb.find(y);
    out.first.push_back(ia == ca.end() ? 0 : ia->second);
    out.second.push_back(ib == cb.end() ? 0 : ib->second);
  }
  return out;
}

}  // namespace estmap
