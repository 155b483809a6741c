// Acceptance suite. Prints one PASS/FAIL line per criterion.
//
//   acceptance            run every criterion
//   acceptance c03 c07    run the named ones
//
// Exit status is non-zero when any selected criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "estmap/geo/excellence.hpp"
#include "estmap/harvest/harvester.hpp"
#include "estmap/harvest/mock_server.hpp"
#include "estmap/network/components.hpp"
#include "estmap/network/graph.hpp"
#include "estmap/network/layout.hpp"
#include "estmap/overlay/basemap.hpp"
#include "estmap/overlay/diversity.hpp"
#include "estmap/overlay/frame.hpp"
#include "estmap/query/emit.hpp"
#include "estmap/query/parse.hpp"
#include "estmap/records/timeline.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"
#include "estmap/util/text.hpp"
#include "support/case_queries.hpp"
#include "support/tempdir.hpp"
#include "support/validators.hpp"

using namespace estmap;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::vector<std::string> notes;     // printed under the verdict line
  std::vector<std::string> failures;  // each one fails the criterion

  void fail(std::string why) {
    pass = false;
    failures.push_back(std::move(why));
  }
  void check(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  void note(std::string s) { notes.push_back(std::move(s)); }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v, int digits = 3) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// --- c01 -----------------------------------------------------------------

query::Dialect dialect_of(const std::string& database) {
  if (database == "wos") return query::Dialect::wos;
  if (database == "pubmed") return query::Dialect::pubmed;
  return query::Dialect::uspto;
}

Outcome c01_query_dialects() {
  Outcome o;
  auto t0 = Clock::now();
  auto rows = testing::load_case_queries();
  o.check(rows.size() == 9, "expected 9 published search strings, found " + std::to_string(rows.size()));
  int native_ok = 0, translated_ok = 0, translated_total = 0;
  for (const auto& row : rows) {
    const auto dialect = dialect_of(row.database);
    const auto expected = testing::normalize_printed_query(row.published);
    const auto tag = row.case_name + "/" + row.database;
    try {
      auto q = query::parse_query(row.published, dialect);
      auto again = query::emit_query(q, dialect);
      if (again == expected) {
        ++native_ok;
      } else {
        o.fail(tag + ": native re-emit differs\n      printed: " + expected + "\n      emitted: " + again);
      }
    } catch (const ParseError& e) {
      o.fail(tag + ": published string does not parse: " + e.what());
    }
    if (dialect == query::Dialect::wos) continue;
    ++translated_total;
    auto canonical = query::parse_query(row.canonical, query::Dialect::canonical);
    auto translated = query::emit_query(canonical, dialect);
    if (translated == expected) {
      ++translated_ok;
    } else {
      o.fail(tag + ": canonical translation differs\n      printed:    " + expected + "\n      translated: " +
             translated);
    }
  }
  auto secs = seconds_since(t0);
  o.check(secs < 1.0, "runtime " + fmt(secs) + " s exceeds 1 s");
  o.note("native parse+re-emit " + std::to_string(native_ok) + "/" + std::to_string(rows.size()) +
         ", canonical translations " + std::to_string(translated_ok) + "/" + std::to_string(translated_total) +
         ", " + fmt(secs * 1000, 1) + " ms");
  return o;
}

// --- c02 -----------------------------------------------------------------

struct PublishedCell {
  const char* case_name;
  const char* window;
  long long nodes, giant, isolated;
  double giant_pct, isolated_pct;  // as printed
};

// Published organisation-level co-authorship structure, two case studies by
// six windows (minimum component size four).
const PublishedCell kPublished[] = {
    {"HPV", "1982-1986", 20, 0, 8, 0.00, 4.00},
    {"HPV", "1987-1991", 130, 7, 35, 5.38, 26.92},
    {"HPV", "1992-1996", 173, 62, 43, 35.83, 24.85},
    {"HPV", "1997-2001", 265, 83, 47, 31.32, 17.73},
    {"HPV", "2002-2006", 471, 239, 55, 50.74, 11.68},
    {"HPV", "2007-2011", 816, 504, 83, 61.75, 10.17},
    {"TPMT", "1982-1986", 6, 5, 1, 83.33, 16.67},
    {"TPMT", "1987-1991", 8, 0, 2, 0.00, 25.00},
    {"TPMT", "1992-1996", 36, 9, 7, 25.00, 19.44},
    {"TPMT", "1997-2001", 111, 25, 19, 22.52, 17.12},
    {"TPMT", "2002-2006", 200, 15, 43, 7.50, 21.50},
    {"TPMT", "2007-2011", 232, 82, 33, 35.34, 14.22},
};

// A graph with the given node, giant-component and isolate counts: the giant
// is a path, the remaining nodes form components of two or three nodes.
network::Graph graph_with(long long nodes, long long giant, long long isolated) {
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::size_t next = 0;
  for (long long k = 1; k < giant; ++k, ++next) edges.emplace_back(next, next + 1);
  if (giant > 0) ++next;
  long long rest = nodes - giant - isolated;
  while (rest > 0) {
    long long size = (rest == 4 || rest == 2) ? 2 : 3;
    for (long long k = 1; k < size; ++k) edges.emplace_back(next + k - 1, next + k);
    next += static_cast<std::size_t>(size);
    rest -= size;
  }
  return network::Graph::from_edge_list(static_cast<std::size_t>(nodes), edges);
}

double percent_value(const std::string& s) { return std::stod(s.substr(0, s.size() - 1)); }

Outcome c02_component_percentages() {
  Outcome o;
  auto t0 = Clock::now();
  const double tol = 0.01 + 1e-9;
  int matched = 0, total = 0;
  for (const auto& cell : kPublished) {
    auto g = graph_with(cell.nodes, cell.giant, cell.isolated);
    auto r = network::component_report(g, 4);
    auto tag = std::string(cell.case_name) + " " + cell.window;
    if (r.n_nodes != cell.nodes || r.giant_size != cell.giant || r.isolated_count != cell.isolated) {
      o.fail(tag + ": constructed graph does not carry the published counts");
      continue;
    }
    const double giant = percent_value(r.giant_share.percent());
    const double isolated = percent_value(r.isolated_share.percent());
    total += 2;
    if (std::abs(giant - cell.giant_pct) <= tol) {
      ++matched;
    } else {
      o.fail(tag + " giant: " + std::to_string(cell.giant) + "/" + std::to_string(cell.nodes) + " = " +
             r.giant_share.percent() + ", printed " + fmt(cell.giant_pct, 2) + "%");
    }
    if (std::abs(isolated - cell.isolated_pct) <= tol) {
      ++matched;
    } else {
      o.fail(tag + " isolated: " + std::to_string(cell.isolated) + "/" + std::to_string(cell.nodes) + " = " +
             r.isolated_share.percent() + ", printed " + fmt(cell.isolated_pct, 2) + "%");
    }
  }
  auto secs = seconds_since(t0);
  o.check(secs < 1.0, "runtime " + fmt(secs) + " s exceeds 1 s");
  o.note(std::to_string(matched) + "/" + std::to_string(total) + " printed percentages reproduced within 0.01 points");
  return o;
}

// --- c03 -----------------------------------------------------------------

// Textbook Pearson chi-square on the 2x2 table
//   [ a  b ]   a = city top,  b = city rest
//   [ c  d ]   c = other top, d = other rest
// with expected counts from the margins; 0 when any margin is empty.
double textbook_chi2(long long n_top, long long n_total, long long K, long long N) {
  const double a = static_cast<double>(n_top), b = static_cast<double>(n_total - n_top);
  const double c = static_cast<double>(K - n_top), d = static_cast<double>((N - n_total) - (K - n_top));
  const double n = a + b + c + d;
  const double rows[2] = {a + b, c + d};
  const double cols[2] = {a + c, b + d};
  if (rows[0] == 0 || rows[1] == 0 || cols[0] == 0 || cols[1] == 0) return 0.0;
  const double obs[2][2] = {{a, b}, {c, d}};
  double chi2 = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const double e = rows[i] * cols[j] / n;
      chi2 += (obs[i][j] - e) * (obs[i][j] - e) / e;
    }
  }
  return chi2;
}

Outcome c03_chi_square() {
  Outcome o;
  geo::ExcellenceConfig cfg;
  long long tuples = 0, equal_props = 0, significant = 0;
  double worst = 0.0;
  double below = 0.0, above = 1e300;
  for (long long N : {20, 23, 31, 40, 57, 64, 90, 128, 250}) {
    for (long long n_total = 1; n_total < N; n_total += std::max<long long>(1, N / 12)) {
      for (long long K = 0; K <= N; K += std::max<long long>(1, N / 10)) {
        const long long lo = std::max<long long>(0, K - (N - n_total));
        const long long hi = std::min(K, n_total);
        for (long long n_top = lo; n_top <= hi; ++n_top) {
          ++tuples;
          auto t = geo::excellence_test(n_top, n_total, K, N, cfg);
          const double ref = textbook_chi2(n_top, n_total, K, N);
          const double err = std::abs(t.chi2 - ref);
          worst = std::max(worst, err);
          if (err > 1e-9) {
            o.fail("chi2(" + std::to_string(n_top) + "," + std::to_string(n_total) + "," + std::to_string(K) + "," +
                   std::to_string(N) + ") = " + std::to_string(t.chi2) + ", textbook " + std::to_string(ref));
          }
          if (t.significant != (t.chi2 > 3.841)) o.fail("significance flag disagrees with chi2 > 3.841");
          significant += t.significant ? 1 : 0;
          if (t.chi2 <= 3.841) below = std::max(below, t.chi2);
          if (t.chi2 > 3.841) above = std::min(above, t.chi2);
          if (n_top * N == K * n_total) {
            ++equal_props;
            if (t.chi2 != 0.0) o.fail("equal proportions gave chi2 = " + std::to_string(t.chi2));
          }
        }
      }
    }
  }
  o.check(tuples >= 10000, "grid holds only " + std::to_string(tuples) + " tuples");
  o.check(equal_props > 0, "grid contains no equal-proportion tuples");
  // The flag around the critical value itself.
  o.check(!geo::excellence_test(1, 2, 1, 2).significant, "degenerate table flagged significant");
  o.note(std::to_string(tuples) + " tuples, max |diff| " + std::to_string(worst) + ", " +
         std::to_string(equal_props) + " equal-proportion tuples at 0, " + std::to_string(significant) +
         " significant; nearest chi2 below/above 3.841: " + fmt(below, 4) + " / " + fmt(above, 4));
  return o;
}

// --- c04 -----------------------------------------------------------------

double naive_rao_stirling(const std::vector<double>& p, const overlay::Matrix& d) {
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (i != j) sum += p[i] * p[j] * d[i][j];
    }
  }
  return sum;
}

Outcome c04_rao_stirling() {
  Outcome o;
  std::mt19937_64 rng(404);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const std::size_t n = 1 + rng() % 50;
    overlay::Basemap map;
    map.id = "random";
    overlay::Matrix sim(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
      overlay::BasemapNode node;
      node.code = "K" + std::to_string(i);
      map.nodes.push_back(node);
      sim[i][i] = 1.0;
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (unit(rng) < 0.6) {
          sim[i][j] = sim[j][i] = unit(rng);
          if (sim[i][j] > 0.0) map.edges.push_back({i, j, sim[i][j]});
        }
      }
    }
    map.reindex();
    overlay::OverlayFrame frame;
    frame.basemap_id = map.id;
    long long total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      long long c = static_cast<long long>(rng() % 6);
      if (c > 0) frame.counts[map.nodes[i].code] = c;
      total += c;
    }
    if (total == 0) frame.counts[map.nodes[0].code] = total = 1;

    std::vector<double> p;
    std::vector<std::size_t> idx;
    for (const auto& [code, c] : frame.counts) {
      p.push_back(static_cast<double>(c) / static_cast<double>(total));
      idx.push_back(*map.index_of(code));
    }
    overlay::Matrix d(p.size(), std::vector<double>(p.size()));
    for (std::size_t a = 0; a < p.size(); ++a) {
      for (std::size_t b = 0; b < p.size(); ++b) d[a][b] = a == b ? 0.0 : 1.0 - sim[idx[a]][idx[b]];
    }
    const double ref = naive_rao_stirling(p, d);
    const double via_frame = overlay::rao_stirling(frame, map).delta;
    const double via_vectors = overlay::rao_stirling(p, d);
    worst = std::max({worst, std::abs(via_frame - ref), std::abs(via_vectors - ref)});
    if (std::abs(via_frame - ref) > 1e-12 || std::abs(via_vectors - ref) > 1e-12) {
      o.fail("frame " + std::to_string(t) + ": delta " + std::to_string(via_frame) + " vs naive " + std::to_string(ref));
    }
    if (p.size() == 1 && via_frame != 0.0) o.fail("single-code frame gave " + std::to_string(via_frame));
  }
  const double half = overlay::rao_stirling({0.5, 0.5}, {{0.0, 1.0}, {1.0, 0.0}});
  o.check(std::abs(half - 0.5) <= 1e-15, "p=(1/2,1/2), d=1 gave " + std::to_string(half));
  o.check(overlay::rao_stirling({1.0}, {{0.0}}) == 0.0, "single code not zero");
  o.note("1000 frames, max |diff| " + std::to_string(worst) + "; (1/2,1/2) with d=1 -> " + fmt(half, 6));
  return o;
}

// --- c05 -----------------------------------------------------------------

// Label propagation until nothing changes: every node ends with the smallest
// index reachable from it.
std::vector<std::size_t> brute_force_labels(std::size_t n, const std::vector<network::Edge>& edges) {
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& e : edges) {
      auto m = std::min(label[e.u], label[e.v]);
      if (label[e.u] != m || label[e.v] != m) {
        label[e.u] = label[e.v] = m;
        changed = true;
      }
    }
  }
  return label;
}

Outcome c05_components() {
  Outcome o;
  std::mt19937_64 rng(505);
  long long nodes_seen = 0;
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng() % 200;
    const double density = std::uniform_real_distribution<double>(0.0, 2.5)(rng) / static_cast<double>(n);
    std::vector<std::pair<std::size_t, std::size_t>> list;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < density) list.emplace_back(i, j);
      }
    }
    auto g = network::Graph::from_edge_list(n, list);
    nodes_seen += static_cast<long long>(n);
    auto labels = brute_force_labels(n, g.edges());
    std::map<std::size_t, std::set<std::size_t>> oracle_sets;
    for (std::size_t v = 0; v < n; ++v) oracle_sets[labels[v]].insert(v);
    std::set<std::set<std::size_t>> oracle;
    long long min4 = 0, giant = 0, isolated = 0;
    for (const auto& [l, s] : oracle_sets) {
      oracle.insert(s);
      auto size = static_cast<long long>(s.size());
      if (size >= 4) {
        ++min4;
        giant = std::max(giant, size);
      }
      if (size == 1) ++isolated;
    }
    std::set<std::set<std::size_t>> got;
    for (const auto& c : network::connected_components(g)) got.insert(std::set<std::size_t>(c.begin(), c.end()));
    auto r = network::component_report(g, 4);
    if (got != oracle) o.fail("graph " + std::to_string(t) + ": partition differs");
    if (r.n_components_min != min4) o.fail("graph " + std::to_string(t) + ": min-size-4 count differs");
    if (r.giant_size != giant) o.fail("graph " + std::to_string(t) + ": giant size differs");
    if (r.isolated_count != isolated) o.fail("graph " + std::to_string(t) + ": isolated count differs");
  }
  o.note("500 graphs, " + std::to_string(nodes_seen) + " nodes in total");
  return o;
}

// --- c06 -----------------------------------------------------------------

std::vector<std::string> labels_of(const std::vector<Window>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(w.label());
  return out;
}

std::string joined(const std::vector<std::string>& v) { return text::join(v, ", "); }

Outcome c06_windows() {
  Outcome o;
  WindowSpec regular;
  regular.anchor_year = 1982;
  regular.width_years = 5;
  auto six = labels_of(make_windows(regular, 2011));
  const std::vector<std::string> want_six = {"1982-1986", "1987-1991", "1992-1996",
                                             "1997-2001", "2002-2006", "2007-2011"};
  o.check(six == want_six, "anchor 1982 gave " + joined(six));

  WindowSpec rnai;
  rnai.first_window = Window{1998, 2001};
  rnai.anchor_year = 2002;
  rnai.width_years = 5;
  auto three = labels_of(make_windows(rnai, 2011));
  const std::vector<std::string> want_three = {"1998-2001", "2002-2006", "2007-2011"};
  o.check(three == want_three, "first-window override gave " + joined(three));

  // The same windows partition a record set, one record per year.
  std::vector<Record> records;
  for (int y = 1998; y <= 2011; ++y) {
    Record r;
    r.id = "r:" + std::to_string(y);
    r.year = y;
    r.title = "x";
    records.push_back(r);
  }
  auto part = window_partition(records, rnai);
  std::vector<std::size_t> sizes;
  for (const auto& b : part.bins) sizes.push_back(b.record_ids.size());
  o.check(sizes == std::vector<std::size_t>({4, 5, 5}) && part.excluded.empty(), "partition sizes are wrong");
  o.note(joined(six) + " | " + joined(three));
  return o;
}

// --- c07 -----------------------------------------------------------------

Outcome c07_layout() {
  Outcome o;
  std::mt19937_64 rng(707);
  int sweeps = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 2 + rng() % 40;
    std::vector<std::pair<std::size_t, std::size_t>> list;
    for (std::size_t i = 1; i < n; ++i) {
      if (rng() % 5 != 0) list.emplace_back(rng() % i, i);
    }
    for (std::size_t k = 0; k < n / 3; ++k) {
      auto a = rng() % n, b = rng() % n;
      if (a != b) list.emplace_back(std::min(a, b), std::max(a, b));
    }
    auto g = network::Graph::from_edge_list(n, list);
    network::LayoutOptions opt;
    opt.seed = rng();
    auto a = network::layout_stress(g, opt);
    auto b = network::layout_stress(g, opt);
    sweeps += static_cast<int>(a.stress_history.size());
    for (std::size_t k = 1; k < a.stress_history.size(); ++k) {
      if (a.stress_history[k] > a.stress_history[k - 1]) {
        o.fail("graph " + std::to_string(t) + ": stress rose at sweep " + std::to_string(k));
        break;
      }
    }
    if (a.coords.size() != b.coords.size() ||
        !std::equal(a.coords.begin(), a.coords.end(), b.coords.begin(), [](const auto& p, const auto& q) {
          return std::memcmp(&p, &q, sizeof p) == 0;
        })) {
      o.fail("graph " + std::to_string(t) + ": same seed gave different coordinates");
    }
  }
  auto path = network::Graph::from_edge_list(3, {{0, 1}, {1, 2}});
  auto layout = network::layout_stress(path);
  o.check(layout.stress <= 1e-6, "3-node path stress " + std::to_string(layout.stress));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", layout.stress);
  o.note("100 graphs, " + std::to_string(sweeps) + " sweeps, all non-increasing; 3-node path stress " + buf);
  return o;
}

// --- c08 -----------------------------------------------------------------

Outcome c08_top_cited() {
  Outcome o;
  std::mt19937_64 rng(808);
  int degenerate_seen = 0, tie_cases = 0;
  for (int t = 0; t < 1000; ++t) {
    // share as a fraction num / 100, so the oracle's rank is exact integer arithmetic
    const long long num = t % 2 == 0 ? 10 : 25;
    const std::size_t n = 1 + rng() % 120;
    const bool all_equal = t % 50 == 7;
    const long long spread = 1 + static_cast<long long>(rng() % 40);
    std::vector<Record> records;
    for (std::size_t i = 0; i < n; ++i) {
      Record r;
      r.id = "r" + std::to_string(i);
      r.year = 2000;
      r.title = "x";
      r.citation_count = all_equal ? 9 : static_cast<long long>(rng() % static_cast<std::uint64_t>(spread));
      records.push_back(r);
    }
    auto got = geo::top_cited_threshold(records, static_cast<double>(num) / 100.0);

    std::vector<long long> sorted;
    for (const auto& r : records) sorted.push_back(*r.citation_count);
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const auto N = static_cast<long long>(n);
    const long long rank = std::max<long long>(1, (N * num + 99) / 100);
    const long long cutoff = sorted[static_cast<std::size_t>(rank - 1)];
    std::set<std::string> want;
    for (const auto& r : records) {
      if (*r.citation_count >= cutoff) want.insert(r.id);
    }
    const bool degenerate = sorted.front() == sorted.back();
    if (static_cast<long long>(want.size()) > rank) ++tie_cases;
    degenerate_seen += degenerate ? 1 : 0;
    if (got.top_ids != want) o.fail("vector " + std::to_string(t) + ": selected set differs from the oracle");
    if (got.cutoff != cutoff) o.fail("vector " + std::to_string(t) + ": cutoff differs");
    if (got.degenerate != degenerate) o.fail("vector " + std::to_string(t) + ": degenerate flag wrong");
  }
  o.check(degenerate_seen >= 20, "too few degenerate vectors exercised");
  o.check(tie_cases > 0, "no vector had ties at the cutoff");
  o.note("1000 vectors at shares 0.10 and 0.25; " + std::to_string(tie_cases) + " with ties at the cutoff, " +
         std::to_string(degenerate_seen) + " degenerate");
  return o;
}

// --- c09 -----------------------------------------------------------------

Outcome c09_harvest() {
  using namespace std::chrono_literals;
  Outcome o;
  std::vector<harvest::MockServer::Entry> corpus;
  for (int i = 1; i <= 57; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "%08d", 19000000 + 37 * i);
    corpus.push_back({id, std::string("PMID- ") + id + "\nTI  - siRNA record " + std::to_string(i) + "\n"});
  }
  harvest::MockServer server(corpus);
  server.add_fault({"/esearch", {{"retstart", "10"}}, 2, 429, 0ms});
  server.add_fault({"/efetch", {}, 1, 429, 0ms});
  server.add_fault({"/esearch", {{"retstart", "30"}}, 1, 200, 400ms});  // slower than the client timeout
  server.add_fault({"/efetch", {}, 1, 503, 0ms});
  server.start();

  testing::TempDir tmp("acceptance-harvest");
  harvest::HarvestJob job;
  job.query_text = "siRNA[Title]";
  job.page_size = 10;
  job.rate_limit = 20.0;
  job.burst = 1;
  job.max_retries = 6;
  job.backoff.base = 10ms;
  job.backoff.cap = 200ms;
  job.cursor_file = tmp / "cursor.json";

  harvest::HttpTransport http(server.base_url(), 150ms);
  harvest::SystemClock clock;
  std::vector<std::string> committed;
  std::vector<std::size_t> run_starts;
  int restarts = 0;
  for (int process = 0; process < 2; ++process) {
    run_starts.push_back(server.log().size());
    harvest::Harvester h(job, http, clock);
    int pages = 0;
    try {
      h.run([&](const harvest::IdPage&, const harvest::FetchResult& f) {
        if (process == 0 && pages == 3) throw std::runtime_error("process killed");
        ++pages;
        for (const auto& p : f.payloads) committed.push_back(p.id);
      });
      break;
    } catch (const std::runtime_error& e) {
      if (std::string(e.what()) != "process killed") {
        o.fail(std::string("harvest aborted: ") + e.what());
        break;
      }
      ++restarts;
    }
  }
  server.stop();
  auto log = server.log();

  std::vector<std::string> expected;
  for (const auto& e : corpus) expected.push_back(e.id);
  auto sorted = committed;
  std::sort(sorted.begin(), sorted.end());
  o.check(restarts == 1, "the forced restart did not happen");
  o.check(sorted == expected, "committed ids differ from the corpus (" + std::to_string(committed.size()) + " vs " +
                                  std::to_string(expected.size()) + ")");
  o.check(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(), "an id was committed twice");

  int faults = 0;
  for (const auto& r : log) faults += r.status != 200 ? 1 : 0;
  o.check(faults >= 4, "injected faults were not all observed");

  // Spacing between consecutive requests of one process, measured at the
  // server; 4 ms allows for scheduling and loopback jitter.
  const auto interval = std::chrono::duration<double>(1.0 / job.rate_limit);
  const auto slack = std::chrono::duration<double>(0.004);
  double min_gap = 1e9;
  run_starts.push_back(log.size());
  for (std::size_t run = 0; run + 1 < run_starts.size(); ++run) {
    for (std::size_t k = run_starts[run] + 1; k < run_starts[run + 1]; ++k) {
      auto gap = std::chrono::duration<double>(log[k].at - log[k - 1].at);
      min_gap = std::min(min_gap, gap.count());
      if (gap < interval - slack) o.fail("requests " + std::to_string(k - 1) + "," + std::to_string(k) + " only " + fmt(gap.count() * 1000, 1) + " ms apart");
    }
  }
  // Over the whole log, no one-second window holds more than rate + burst requests.
  std::size_t worst_window = 0;
  for (std::size_t i = 0; i < log.size(); ++i) {
    std::size_t j = i;
    while (j < log.size() && log[j].at - log[i].at < std::chrono::seconds(1)) ++j;
    worst_window = std::max(worst_window, j - i);
  }
  o.check(worst_window <= static_cast<std::size_t>(job.rate_limit) + static_cast<std::size_t>(job.burst),
          "a one-second window held " + std::to_string(worst_window) + " requests");
  o.note(std::to_string(log.size()) + " requests (" + std::to_string(faults) + " faulted), 1 restart, " +
         std::to_string(committed.size()) + " ids committed once each; min gap " + fmt(min_gap * 1000, 1) +
         " ms, busiest second " + std::to_string(worst_window) + " requests (limit 20/s)");
  return o;
}

// --- c10 -----------------------------------------------------------------

struct Proc {
  int code = -1;
  std::string out;
  std::string err;
};

Proc run_cli(const std::vector<std::string>& args, const fs::path& scratch) {
  std::string cmd = "'" + std::string(ESTMAP_BIN) + "'";
  for (const auto& a : args) cmd += " '" + a + "'";
  const auto out = scratch / "stdout.txt", err = scratch / "stderr.txt";
  cmd += " >'" + out.string() + "' 2>'" + err.string() + "'";
  Proc p;
  int status = std::system(cmd.c_str());
  p.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  p.out = io::read_file(out);
  p.err = io::read_file(err);
  return p;
}

std::map<std::string, std::string> read_tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  if (!fs::exists(root)) return files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = io::read_file(e.path());
  }
  return files;
}

Outcome c10_end_to_end() {
  Outcome o;
  testing::TempDir tmp("acceptance-report");
  const auto manifest = (fs::path(ESTMAP_DATA_DIR) / "cases" / "rnai" / "manifest.ini").string();

  std::vector<double> times;
  for (const char* dir : {"run1", "run2"}) {
    auto t0 = Clock::now();
    auto p = run_cli({"report", "--manifest", manifest, "--output", (tmp / dir).string()}, tmp.path());
    times.push_back(seconds_since(t0));
    if (p.code != 0) o.fail(std::string("report ") + dir + " exited " + std::to_string(p.code) + ": " + p.err);
  }
  for (double s : times) o.check(s < 10.0, "report took " + fmt(s) + " s");

  auto a = read_tree(tmp / "run1");
  auto b = read_tree(tmp / "run2");
  o.check(!a.empty(), "report wrote nothing");
  if (a != b) {
    std::size_t differing = 0;
    for (const auto& [path, bytes] : a) differing += (!b.count(path) || b.at(path) != bytes) ? 1 : 0;
    o.fail(std::to_string(differing) + " files differ between the two runs");
  }

  // Corpus size and the small patent window.
  std::size_t corpus = 0, patents_first = 0;
  std::string refused_window;
  if (a.count("index.json")) {
    auto index = nlohmann::json::parse(a.at("index.json"));
    std::set<std::string> listed;
    for (const auto& art : index["artifacts"]) listed.insert(art["path"].get<std::string>());
    for (const auto& path : listed) o.check(a.count(path) > 0, "index lists missing file " + path);
    for (const auto& [path, bytes] : a) {
      o.check(path == "index.json" || listed.count(path) > 0, "file not in index: " + path);
    }
    for (const auto& r : index["refusals"]) {
      if (r["db"] == "uspto") refused_window = r["window"].get<std::string>();
    }
  } else {
    o.fail("index.json missing");
  }
  if (a.count("windows.json")) {
    auto w = nlohmann::json::parse(a.at("windows.json"));
    for (const auto& win : w["windows"]) {
      for (const auto& [db, n] : win["records"].items()) corpus += n.get<std::size_t>();
      if (win["label"] == "1998-2001") patents_first = win["records"]["uspto"].get<std::size_t>();
    }
  }
  o.check(corpus >= 450 && corpus <= 550, "bundled corpus has " + std::to_string(corpus) + " records");
  o.check(patents_first == 11, "patent window 1998-2001 has " + std::to_string(patents_first) + " records");
  o.check(refused_window == "1998-2001", "report did not record the small-window refusal");

  // Schema validation of every map and graph output.
  std::map<std::string, int> validated;
  for (const auto& [path, bytes] : a) {
    auto ext = fs::path(path).extension().string();
    testing::Problems problems;
    if (ext == ".geojson") problems = testing::validate_geojson(bytes);
    else if (ext == ".graphml") problems = testing::validate_graphml(bytes);
    else if (ext == ".svg") problems = testing::validate_svg(bytes);
    else if (ext == ".kml") problems = testing::validate_kml(bytes);
    else if (ext == ".json") {
      try {
        auto doc = nlohmann::json::parse(bytes);
        if (doc.is_null()) problems.push_back("empty document");
      } catch (const nlohmann::json::exception& e) {
        problems.push_back(e.what());
      }
    } else {
      continue;
    }
    ++validated[ext];
    for (const auto& p : problems) o.fail(path + ": " + p);
  }
  for (const char* ext : {".geojson", ".graphml", ".svg"}) {
    o.check(validated[ext] > 0, std::string("no ") + ext + " outputs to validate");
  }

  // The refusal through the command line.
  auto refusal = run_cli({"geomap", "--manifest", manifest, "--db", "uspto", "--window", "1998-2001", "--output",
                          (tmp / "geomap").string()},
                         tmp.path());
  o.check(refusal.code == 3, "geomap on the 11-record window exited " + std::to_string(refusal.code));
  o.check(refusal.err.find("sample too small") != std::string::npos, "refusal message missing: " + refusal.err);

  std::string counts;
  for (const auto& [ext, n] : validated) counts += (counts.empty() ? "" : ", ") + std::to_string(n) + " " + ext;
  o.note("runs " + fmt(times[0], 2) + " s and " + fmt(times[1], 2) + " s, " + std::to_string(a.size()) +
         " files byte-identical; validated " + counts + "; " + std::to_string(corpus) +
         " windowed records; geomap on 11 patents exited " + std::to_string(refusal.code));
  return o;
}

struct Criterion {
  const char* id;
  const char* title;
  std::function<Outcome()> run;
};

const std::vector<Criterion> kCriteria = {
    {"c01", "query dialect golden strings", c01_query_dialects},
    {"c02", "component percentages from published counts", c02_component_percentages},
    {"c03", "chi-square oracle equivalence", c03_chi_square},
    {"c04", "Rao-Stirling oracle equivalence", c04_rao_stirling},
    {"c05", "component oracle equivalence", c05_components},
    {"c06", "window partitioning", c06_windows},
    {"c07", "stress layout monotonicity and determinism", c07_layout},
    {"c08", "top-cited thresholding", c08_top_cited},
    {"c09", "harvest under faults and restart", c09_harvest},
    {"c10", "end-to-end report determinism and validity", c10_end_to_end},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<std::string> wanted(argv + 1, argv + argc);
  int failed = 0, ran = 0;
  for (const auto& c : kCriteria) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    ++ran;
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("threw: ") + e.what());
    }
    std::cout << c.id << " " << (o.pass ? "PASS" : "FAIL") << "  " << c.title << "\n";
    for (const auto& n : o.notes) std::cout << "    " << n << "\n";
    const std::size_t shown = std::min<std::size_t>(o.failures.size(), 12);
    for (std::size_t k = 0; k < shown; ++k) std::cout << "    - " << o.failures[k] << "\n";
    if (o.failures.size() > shown) std::cout << "    ... " << o.failures.size() - shown << " more\n";
    failed += o.pass ? 0 : 1;
  }
  if (ran == 0) {
    std::cerr << "no criterion matches the arguments\n";
    return 2;
  }
  return failed == 0 ? 0 : 1;
}
