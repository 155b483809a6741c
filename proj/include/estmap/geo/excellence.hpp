#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "estmap/geo/gazetteer.hpp"
#include "estmap/records/record.hpp"

namespace estmap::geo {

inline constexpr double kChi2Critical05 = 3.841;

struct ExcellenceConfig {
  double top_share = 0.10;
  double alpha = 0.05;
  double chi2_critical = kChi2Critical05;
  bool yates = false;
  /// Windows with fewer geocoded records are refused.
  std::size_t min_records = 20;

  /// 0.10 for publications, 0.25 for patents.
  static ExcellenceConfig for_kind(RecordKind kind);
  /// Throws InputError when a field is out of range.
  void check() const;
};

struct TopCited {
  long long cutoff = 0;
  std::set<std::string> top_ids;
  /// Every record has the same count, so the "top" set is everything.
  bool degenerate = false;
  std::vector<std::string> warnings;
};

/// Cutoff is the count at rank ceil(share * N) in descending order; every
/// record at or above it is in the top set, ties included.
TopCited top_cited_threshold(const std::vector<Record>& records, double top_share);

enum class Direction { positive, negative, none };
std::string_view to_string(Direction d);

struct ExcellenceTest {
  double expected_top = 0.0;
  double chi2 = 0.0;
  double p_value = 1.0;
  bool significant = false;
  Direction direction = Direction::none;
  /// Some expected cell of the 2x2 table is below 5.
  bool validity_warning = false;
  std::vector<std::string> warnings;
};

/// Pearson chi-square, 1 df, on (site, rest) x (top, other).
ExcellenceTest excellence_test(long long n_top, long long n_total, long long K, long long N,
                               const ExcellenceConfig& config = {});

struct SiteStats {
  GeoSite site;
  long long n_total = 0;
  long long n_top = 0;
  double expected_top = 0.0;
  double chi2 = 0.0;
  double p_value = 1.0;
  bool significant = false;
  Direction direction = Direction::none;
  bool validity_warning = false;
};

struct ExcellenceMap {
  Window window;
  long long K = 0;
  long long N = 0;
  long long cutoff = 0;
  std::vector<SiteStats> sites;  // gazetteer order
  std::size_t ungeocoded_records = 0;
  std::vector<std::string> warnings;
};

/// Per-city excellence for the records of `window`. The population is the
/// window's geocoded records; the top-cited threshold is computed on it unless
/// `fixed_cutoff` (a whole-period threshold) is given.
ExcellenceMap excellence_map(const std::vector<Record>& records, const Window& window, const Gazetteer& gazetteer,
                             const ExcellenceConfig& config, std::optional<long long> fixed_cutoff = std::nullopt);

}  // namespace estmap::geo
