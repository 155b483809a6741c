#include "estmap/geo/excellence.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "estmap/util/error.hpp"
#include "estmap/util/text.hpp"

namespace estmap::geo {

ExcellenceConfig ExcellenceConfig::for_kind(RecordKind kind) {
  ExcellenceConfig c;
  c.top_share = kind == RecordKind::patent ? 0.25 : 0.10;
  return c;
}

void ExcellenceConfig::check() const {
  if (!(top_share > 0.0 && top_share < 1.0)) throw InputError("top_share must lie strictly between 0 and 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie strictly between 0 and 1");
  if (!(chi2_critical > 0.0)) throw InputError("chi2_critical must be positive");
}

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::positive: return "positive";
    case Direction::negative: return "negative";
    case Direction::none: return "none";
  }
  return "none";
}

TopCited top_cited_threshold(const std::vector<Record>& records, double top_share) {
  if (!(top_share > 0.0 && top_share < 1.0)) throw InputError("top_share must lie strictly between 0 and 1");
  if (records.empty()) throw InputError("top-cited threshold needs at least one record");
  std::vector<std::string> missing;
  std::vector<long long> counts;
  counts.reserve(records.size());
  for (const auto& r : records) {
    if (!r.citation_count) {
      missing.push_back(r.id);
    } else {
      counts.push_back(*r.citation_count);
    }
  }
  if (!missing.empty()) throw InputError("records without citation_count: " + text::join(missing, ", "));

  std::sort(counts.begin(), counts.end(), std::greater<>());
  auto n = static_cast<double>(counts.size());
  // Guard the ceiling against 0.1 * 30 = 3.0000000000000004.
  auto rank = static_cast<std::size_t>(std::ceil(top_share * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, counts.size());

  TopCited out;
  out.cutoff = counts[rank - 1];
  for (const auto& r : records) {
    if (*r.citation_count >= out.cutoff) out.top_ids.insert(r.id);
  }
  if (counts.front() == counts.back()) {
    out.degenerate = true;
    out.warnings.push_back("all " + std::to_string(counts.size()) +
                           " records have the same citation count; the top set is the whole window");
  }
  return out;
}

ExcellenceTest excellence_test(long long n_top, long long n_total, long long K, long long N,
                               const ExcellenceConfig& config) {
  if (n_total < 1) throw InputError("n_total must be at least 1");
  if (N < n_total) throw InputError("N must be at least n_total");
  if (n_top < 0 || n_top > n_total) throw InputError("n_top must lie in [0, n_total]");
  if (K < n_top || K > N) throw InputError("K must lie in [n_top, N]");
  if (K - n_top > N - n_total) throw InputError("rest-of-world top count exceeds its total");

  ExcellenceTest t;
  const long double a = n_top, b = n_total - n_top, c = K - n_top, d = (N - n_total) - (K - n_top);
  const long double row1 = a + b, row2 = c + d, col1 = a + c, col2 = b + d, total = N;
  t.expected_top = static_cast<double>(row1 * col1 / total);

  // Sign of n_top - n_total*K/N; the products are exact for counts below 2^32.
  const long double lhs = a * total;
  const long double rhs = row1 * (c + a);
  t.direction = lhs > rhs ? Direction::positive : lhs < rhs ? Direction::negative : Direction::none;

  for (long double row : {row1, row2}) {
    for (long double col : {col1, col2}) {
      if (row * col / total < 5.0L) t.validity_warning = true;
    }
  }

  if (row2 == 0 || col1 == 0 || col2 == 0) {
    t.warnings.push_back(K == 0 ? "no top-cited records in the population"
                         : K == N ? "every record in the population is top-cited"
                                  : "the site is the whole population");
    return t;  // chi2 = 0, p = 1
  }
  long double diff = a * d - b * c;
  if (diff < 0) diff = -diff;
  if (config.yates) diff = std::max(0.0L, diff - total / 2.0L);
  const long double chi2 = total * diff * diff / (row1 * row2 * col1 * col2);
  t.chi2 = static_cast<double>(chi2);
  t.p_value = std::erfc(std::sqrt(t.chi2 / 2.0));
  t.significant = t.chi2 > config.chi2_critical;
  return t;
}

ExcellenceMap excellence_map(const std::vector<Record>& records, const Window& window, const Gazetteer& gazetteer,
                             const ExcellenceConfig& config, std::optional<long long> fixed_cutoff) {
  config.check();
  ExcellenceMap out;
  out.window = window;

  std::vector<Record> population;
  std::vector<std::vector<const GeoSite*>> sites;
  for (const auto& r : records) {
    if (!window.contains(r.year)) continue;
    auto s = record_sites(r, gazetteer);
    if (s.empty()) {
      ++out.ungeocoded_records;
      continue;
    }
    population.push_back(r);
    sites.push_back(std::move(s));
  }
  if (population.size() < config.min_records) {
    throw SampleTooSmall("window " + window.label() + " has " + std::to_string(population.size()) +
                         " geocoded records; at least " + std::to_string(config.min_records) + " are needed");
  }
  if (out.ungeocoded_records > 0) {
    out.warnings.push_back(std::to_string(out.ungeocoded_records) + " records in " + window.label() +
                           " have no resolvable address and were left out");
  }

  std::set<std::string> top_ids;
  if (fixed_cutoff) {
    std::vector<std::string> missing;
    for (const auto& r : population) {
      if (!r.citation_count) {
        missing.push_back(r.id);
      } else if (*r.citation_count >= *fixed_cutoff) {
        top_ids.insert(r.id);
      }
    }
    if (!missing.empty()) throw InputError("records without citation_count: " + text::join(missing, ", "));
    out.cutoff = *fixed_cutoff;
  } else {
    auto top = top_cited_threshold(population, config.top_share);
    out.cutoff = top.cutoff;
    top_ids = std::move(top.top_ids);
    out.warnings.insert(out.warnings.end(), top.warnings.begin(), top.warnings.end());
  }
  out.N = static_cast<long long>(population.size());
  out.K = static_cast<long long>(top_ids.size());

  std::map<const GeoSite*, std::pair<long long, long long>> per_site;  // total, top
  for (std::size_t i = 0; i < population.size(); ++i) {
    bool top = top_ids.count(population[i].id) > 0;
    for (const auto* s : sites[i]) {
      auto& [total, ntop] = per_site[s];
      ++total;
      if (top) ++ntop;
    }
  }
  std::vector<std::pair<const GeoSite*, std::pair<long long, long long>>> ordered(per_site.begin(), per_site.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  for (const auto& [site, counts] : ordered) {
    auto t = excellence_test(counts.second, counts.first, out.K, out.N, config);
    SiteStats st;
    st.site = *site;
    st.n_total = counts.first;
    st.n_top = counts.second;
    st.expected_top = t.expected_top;
    st.chi2 = t.chi2;
    st.p_value = t.p_value;
    st.significant = t.significant;
    st.direction = t.direction;
    st.validity_warning = t.validity_warning;
    out.sites.push_back(std::move(st));
  }
  return out;
}

}  // namespace estmap::geo
