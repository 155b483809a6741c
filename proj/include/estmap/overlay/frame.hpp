#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "estmap/overlay/basemap.hpp"
#include "estmap/records/record.hpp"

namespace estmap::overlay {

enum class SizeRule { linear, log2, log10 };
std::string_view to_string(SizeRule rule);
SizeRule size_rule_from_string(std::string_view s);
/// log2(count + 1) for MeSH, linear for categories, journals and IPC.
SizeRule default_size_rule(CodeScheme scheme);
double size_term(long long count, SizeRule rule);

struct RadiusRange {
  double min_px = 2.0;
  double max_px = 30.0;
};

struct OverlayFrame {
  std::string basemap_id;
  CodeScheme scheme = CodeScheme::wos_category;
  std::optional<Window> window;
  SizeRule rule = SizeRule::linear;
  /// Basemap codes with a positive count.
  std::map<std::string, long long> counts;
  /// Codes absent from the basemap, with their counts.
  std::vector<std::pair<std::string, long long>> unmatched;
  /// Display radius for every basemap code, zero counts at the floor.
  std::map<std::string, double> sizes;
  /// Deduplicated (record, code) occurrences, matched or not.
  long long occurrences = 0;
  /// MeSH codes dropped because their branch is not drawn.
  long long filtered = 0;
  std::vector<std::string> warnings;
};

struct ProjectOptions {
  std::optional<SizeRule> rule;  // default_size_rule(scheme) when empty
  RadiusRange range;
  int mesh_levels = 2;
  int ipc_level = 4;
};

/// Counts each code at most once per record. MeSH and IPC codes are truncated
/// to the basemap's level first. Records whose codes are all of another scheme
/// make the call fail.
OverlayFrame project_overlay(const std::vector<Record>& records, const Basemap& basemap,
                             const std::optional<Window>& window, const ProjectOptions& options = {});

}  // namespace estmap::overlay
