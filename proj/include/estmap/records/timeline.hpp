#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "estmap/records/record.hpp"

namespace estmap {

struct WindowSpec {
  int width_years = 5;
  int anchor_year = 0;
  /// Last year the regular sequence must cover; defaults to the latest
  /// record year.
  std::optional<int> end_year;
  /// Optional leading window before the regular sequence (may be shorter).
  std::optional<Window> first_window;
};

struct WindowBin {
  Window window;
  std::vector<std::string> record_ids;  // id order
};

struct WindowPartition {
  std::vector<WindowBin> bins;
  std::vector<std::string> excluded;  // records outside every window
};

/// Consecutive, non-overlapping windows of `width_years` starting at the
/// anchor. Throws InputError for width < 1 or a first window that reaches
/// into the regular sequence.
WindowPartition window_partition(std::span<const Record> records, const WindowSpec& spec);

/// Only the window boundaries (what window_partition would produce).
std::vector<Window> make_windows(const WindowSpec& spec, std::optional<int> last_record_year);

/// Records whose year falls in `window`.
std::vector<Record> records_in(std::span<const Record> records, const Window& window);

/// year -> count, zero-filled between the first and last year.
std::map<int, std::size_t> yearly_counts(std::span<const Record> records);

struct TrendComparison {
  std::vector<int> years;
  std::vector<std::size_t> first;
  std::vector<std::size_t> second;
};

/// Per-year counts of two corpora on the union of their year ranges.
TrendComparison compare_trends(std::span<const Record> a, std::span<const Record> b);

}  // namespace estmap
