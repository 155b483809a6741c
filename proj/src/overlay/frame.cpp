#include "estmap/overlay/frame.hpp"

#include <cmath>
#include <set>

#include "estmap/overlay/codes.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/text.hpp"

namespace estmap::overlay {

std::string_view to_string(SizeRule rule) {
  switch (rule) {
    case SizeRule::linear: return "linear";
    case SizeRule::log2: return "log2";
    case SizeRule::log10: return "log10";
  }
  return "linear";
}

SizeRule size_rule_from_string(std::string_view s) {
  auto l = text::to_lower_ascii(s);
  if (l == "linear") return SizeRule::linear;
  if (l == "log2") return SizeRule::log2;
  if (l == "log10") return SizeRule::log10;
  throw InputError("unknown size rule '" + std::string(s) + "' (expected linear, log2 or log10)");
}

SizeRule default_size_rule(CodeScheme scheme) {
  return scheme == CodeScheme::mesh ? SizeRule::log2 : SizeRule::linear;
}

double size_term(long long count, SizeRule rule) {
  if (count <= 0) return 0.0;
  auto c = static_cast<double>(count);
  switch (rule) {
    case SizeRule::linear: return c;
    case SizeRule::log2: return std::log2(c + 1.0);
    case SizeRule::log10: return std::log10(c + 1.0);
  }
  return c;
}

namespace {

/// The record's codes in the basemap's scheme, truncated and deduplicated.
std::set<std::string> record_codes(const Record& r, const Basemap& map, const ProjectOptions& opt, long long& filtered,
                                   std::vector<std::string>& warnings) {
  auto raw = r.codes_of(map.scheme);
  std::set<std::string> out;
  if (map.scheme == CodeScheme::mesh) {
    auto t = mesh_truncate(raw, opt.mesh_levels);
    filtered += static_cast<long long>(t.filtered);
    for (auto& p : t.problems) warnings.push_back(r.id + ": " + p);
    out.insert(t.codes.begin(), t.codes.end());
  } else if (map.scheme == CodeScheme::ipc) {
    auto t = ipc_truncate(raw, opt.ipc_level);
    for (auto& p : t.problems) warnings.push_back(r.id + ": " + p);
    out.insert(t.codes.begin(), t.codes.end());
  } else {
    out.insert(raw.begin(), raw.end());
  }
  return out;
}

}  // namespace

OverlayFrame project_overlay(const std::vector<Record>& records, const Basemap& basemap,
                             const std::optional<Window>& window, const ProjectOptions& options) {
  if (!(options.range.min_px >= 0.0 && options.range.max_px >= options.range.min_px)) {
    throw InputError("radius range must satisfy 0 <= min <= max");
  }
  OverlayFrame f;
  f.basemap_id = basemap.id;
  f.scheme = basemap.scheme;
  f.window = window;
  f.rule = options.rule.value_or(default_size_rule(basemap.scheme));

  std::map<std::string, long long> unmatched;
  bool other_scheme_seen = false;
  for (const auto& r : records) {
    if (window && !window->contains(r.year)) continue;
    auto codes = record_codes(r, basemap, options, f.filtered, f.warnings);
    if (codes.empty() && !r.codes.empty()) {
      bool has_own = false;
      for (const auto& c : r.codes) has_own = has_own || c.scheme == basemap.scheme;
      other_scheme_seen = other_scheme_seen || !has_own;
    }
    for (const auto& c : codes) {
      ++f.occurrences;
      if (basemap.index_of(c)) {
        ++f.counts[c];
      } else {
        ++unmatched[c];
      }
    }
  }
  if (f.occurrences == 0 && f.filtered == 0 && other_scheme_seen) {
    throw InputError("scheme mismatch: the records carry no " + std::string(to_string(basemap.scheme)) +
                     " codes for basemap " + basemap.id);
  }
  f.unmatched.assign(unmatched.begin(), unmatched.end());

  double top = 0.0;
  for (const auto& [code, n] : f.counts) top = std::max(top, size_term(n, f.rule));
  for (const auto& node : basemap.nodes) {
    auto it = f.counts.find(node.code);
    double term = it == f.counts.end() ? 0.0 : size_term(it->second, f.rule);
    f.sizes[node.code] =
        top > 0.0 ? options.range.min_px + (options.range.max_px - options.range.min_px) * term / top : options.range.min_px;
  }
  return f;
}

}  // namespace estmap::overlay
