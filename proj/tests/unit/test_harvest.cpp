#include <doctest.h>

#include <algorithm>
#include <deque>
#include <fstream>
#include <random>
#include <set>

#include "estmap/harvest/harvester.hpp"
#include "estmap/harvest/mock_server.hpp"
#include "estmap/util/io.hpp"
#include "support/tempdir.hpp"

using namespace estmap;
using namespace estmap::harvest;
using namespace std::chrono_literals;

namespace {

std::vector<MockServer::Entry> numbered_corpus(int n) {
  std::vector<MockServer::Entry> out;
  for (int i = 1; i <= n; ++i) {
    char id[16];
    std::snprintf(id, sizeof id, "id%03d", i);
    out.push_back({id, std::string("PMID- ") + std::to_string(1000 + i) + "\nTI  - record " + id + "\n"});
  }
  return out;
}

HarvestJob fast_job(int page_size) {
  HarvestJob job;
  job.query_text = "TI=(rna interference)";
  job.page_size = page_size;
  job.rate_limit = 1000.0;
  job.backoff.base = 1ms;
  return job;
}

std::vector<std::string> fetched_ids(Harvester& h) {
  std::vector<std::string> ids;
  h.run([&](const IdPage&, const FetchResult& f) {
    for (const auto& p : f.payloads) ids.push_back(p.id);
  });
  return ids;
}

/// Transport that replays a scripted list of responses and records requests.
class ScriptedTransport final : public Transport {
public:
  std::deque<Response> script;
  std::vector<Request> seen;
  Response get(const Request& r) override {
    seen.push_back(r);
    if (script.empty()) return {200, R"({"count":0,"retstart":0,"idlist":[]})", false, {}};
    auto out = script.front();
    script.pop_front();
    return out;
  }
};

}  // namespace

TEST_CASE("search pages 25 ids as 10, 10, 5") {
  MockServer server(numbered_corpus(25));
  server.start();
  HttpTransport http(server.base_url(), 2s);
  SystemClock clock;
  Harvester h(fast_job(10), http, clock);
  std::vector<std::size_t> sizes;
  h.search([&](const IdPage& p) { sizes.push_back(p.ids.size()); });
  CHECK(sizes == std::vector<std::size_t>{10, 10, 5});
  CHECK(h.cursor() == 25);
}

TEST_CASE("a single 429 costs exactly one retry and changes nothing") {
  auto corpus = numbered_corpus(12);
  std::vector<std::string> baseline;
  {
    MockServer server(corpus);
    server.start();
    HttpTransport http(server.base_url(), 2s);
    SystemClock clock;
    Harvester h(fast_job(5), http, clock);
    baseline = fetched_ids(h);
    CHECK(h.stats().retries == 0);
  }
  MockServer server(corpus);
  server.add_fault({"/esearch", {{"retstart", "5"}}, 1, 429, 0ms});
  server.start();
  HttpTransport http(server.base_url(), 2s);
  SystemClock clock;
  Harvester h(fast_job(5), http, clock);
  auto ids = fetched_ids(h);
  CHECK(ids == baseline);
  CHECK(h.stats().retries == 1);
  auto log = server.log();
  CHECK(std::count_if(log.begin(), log.end(), [](const auto& e) { return e.status == 429; }) == 1);
}

TEST_CASE("a job killed after page 1 resumes without re-requesting it") {
  estmap::testing::TempDir tmp("harvest");
  MockServer server(numbered_corpus(25));
  server.start();
  HttpTransport http(server.base_url(), 2s);
  SystemClock clock;
  auto job = fast_job(10);
  job.cursor_file = tmp / "cursor.json";

  struct Killed {};
  std::vector<std::string> got;
  {
    Harvester first(job, http, clock);
    int pages = 0;
    CHECK_THROWS_AS(first.run([&](const IdPage&, const FetchResult& f) {
                      for (const auto& p : f.payloads) got.push_back(p.id);
                      if (++pages == 1) return;
                      throw Killed{};
                    }),
                    Killed);
  }
  // Page 2 was delivered but its sink never returned, so it is not committed.
  got.resize(10);
  server.clear_log();
  Harvester second(job, http, clock);
  CHECK(second.cursor() == 10);
  second.run([&](const IdPage&, const FetchResult& f) {
    for (const auto& p : f.payloads) got.push_back(p.id);
  });
  auto log = server.log();
  for (const auto& e : log) {
    if (e.path == "/esearch") CHECK(e.params.at("retstart") != "0");
  }
  std::vector<std::string> expected;
  for (const auto& e : numbered_corpus(25)) expected.push_back(e.id);
  CHECK(got == expected);
}

TEST_CASE("a cursor file from another query is rejected") {
  estmap::testing::TempDir tmp("harvest");
  io::write_file_atomic(tmp / "cursor.json", R"({"query":"other","db":"medline","retstart":10})");
  ScriptedTransport t;
  ManualClock clock;
  auto job = fast_job(10);
  job.cursor_file = tmp / "cursor.json";
  CHECK_THROWS_AS(Harvester(job, t, clock), InputError);
}

TEST_CASE("fetch: empty page sends nothing, unknown ids warn, batches are capped") {
  MockServer server(numbered_corpus(7));
  server.start();
  HttpTransport http(server.base_url(), 2s);
  SystemClock clock;
  Harvester h(fast_job(3), http, clock);

  auto none = h.fetch_records({});
  CHECK(none.payloads.empty());
  CHECK(server.log().empty());

  auto r = h.fetch_records({"id001", "nope", "id003"});
  CHECK(r.payloads.size() == 2);
  REQUIRE(r.warnings.size() == 1);
  CHECK(r.warnings[0].find("nope") != std::string::npos);

  server.clear_log();
  auto all = h.fetch_records({"id001", "id002", "id003", "id004", "id005", "id006", "id007"});
  CHECK(all.payloads.size() == 7);
  CHECK(server.log().size() == 3);
}

TEST_CASE("non-transient 4xx aborts with the status; exhausted retries keep the cursor") {
  ScriptedTransport t;
  ManualClock clock;
  t.script.push_back({403, "forbidden", false, {}});
  Harvester h(fast_job(10), t, clock);
  try {
    h.search([](const IdPage&) {});
    FAIL("expected HarvestError");
  } catch (const HarvestError& e) {
    CHECK(e.status() == 403);
  }
  CHECK(t.seen.size() == 1);

  estmap::testing::TempDir tmp("harvest");
  ScriptedTransport t2;
  t2.script.push_back({200, R"({"count":20,"retstart":0,"idlist":["a","b","c","d","e","f","g","h","i","j"]})", false, {}});
  for (int i = 0; i < 10; ++i) t2.script.push_back({503, "", false, {}});
  auto job = fast_job(10);
  job.max_retries = 3;
  job.cursor_file = tmp / "c.json";
  Harvester h2(job, t2, clock);
  CHECK_THROWS_AS(h2.search([](const IdPage&) {}), HarvestError);
  CHECK(t2.seen.size() == 1 + 4);
  CHECK(io::read_file(tmp / "c.json").find("\"retstart\":10") != std::string::npos);
}

TEST_CASE("backoff is full jitter under base * 2^attempt") {
  ScriptedTransport t;
  for (int i = 0; i < 5; ++i) t.script.push_back({500, "", true, "timeout"});
  t.script.push_back({200, R"({"count":0,"retstart":0,"idlist":[]})", false, {}});
  ManualClock clock;
  auto job = fast_job(10);
  job.rate_limit = 1e6;
  job.max_retries = 5;
  job.backoff.base = 500ms;
  Harvester h(job, t, clock);
  h.search([](const IdPage&) {});
  CHECK(h.stats().retries == 5);
  const auto& at = h.stats().dispatch_times;
  REQUIRE(at.size() == 6);
  Nanos ceiling = 500ms;
  bool any_below = false;
  for (std::size_t i = 1; i < at.size(); ++i) {
    auto gap = at[i] - at[i - 1];
    CHECK(gap >= Nanos(0));
    CHECK(gap <= ceiling + 1us);  // the rate interval is 1 us
    if (gap < ceiling / 2) any_below = true;
    ceiling *= 2;
  }
  CHECK(any_below);  // jitter, not a fixed schedule
}

TEST_CASE("token bucket spacing on a manual clock is exact") {
  ManualClock clock;
  TokenBucket b(4.0, 1, clock);
  std::vector<Nanos> t;
  for (int i = 0; i < 6; ++i) t.push_back(b.acquire());
  for (std::size_t i = 1; i < t.size(); ++i) CHECK(t[i] - t[i - 1] == 250ms);

  ManualClock c2;
  TokenBucket burst(2.0, 3, c2);
  std::vector<Nanos> u;
  for (int i = 0; i < 5; ++i) u.push_back(burst.acquire());
  CHECK(u[0] == u[1]);
  CHECK(u[1] == u[2]);
  CHECK(u[3] - u[0] == 500ms);
  CHECK(u[4] - u[3] == 500ms);
  CHECK_THROWS_AS(TokenBucket(0.0, 1, c2), InputError);
}

TEST_CASE("observed request spacing at the server respects the rate limit") {
  MockServer server(numbered_corpus(16));
  server.start();
  HttpTransport http(server.base_url(), 2s);
  SystemClock clock;
  auto job = fast_job(2);
  job.rate_limit = 20.0;  // 50 ms apart
  Harvester h(job, http, clock);
  h.search([](const IdPage&) {});
  auto log = server.log();
  REQUIRE(log.size() == 8);
  const auto tick = 4ms;
  for (std::size_t i = 1; i < log.size(); ++i) {
    CHECK(log[i].at - log[i - 1].at >= 50ms - tick);
  }
  for (std::size_t i = 1; i < h.stats().dispatch_times.size(); ++i) {
    CHECK(h.stats().dispatch_times[i] - h.stats().dispatch_times[i - 1] >= 50ms);
  }
}

TEST_CASE("recorded fixtures replay offline byte for byte") {
  estmap::testing::TempDir tmp("fixtures");
  auto corpus = numbered_corpus(8);
  std::vector<Payload> live;
  {
    MockServer server(corpus);
    server.start();
    HttpTransport http(server.base_url(), 2s);
    RecordingTransport rec(http, tmp.path());
    SystemClock clock;
    Harvester h(fast_job(3), rec, clock);
    h.run([&](const IdPage&, const FetchResult& f) { live.insert(live.end(), f.payloads.begin(), f.payloads.end()); });
  }
  FixtureTransport offline(tmp.path());
  ManualClock clock;
  Harvester h(fast_job(3), offline, clock);
  std::vector<Payload> replay;
  h.run([&](const IdPage&, const FetchResult& f) { replay.insert(replay.end(), f.payloads.begin(), f.payloads.end()); });
  REQUIRE(replay.size() == corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(replay[i].id == corpus[i].id);
    CHECK(replay[i].bytes == corpus[i].payload);
    CHECK(live[i].bytes == corpus[i].payload);
  }

  // A request nobody recorded is a 404, which is not retried.
  Harvester other(fast_job(4), offline, clock);
  CHECK_THROWS_AS(other.search([](const IdPage&) {}), HarvestError);
}

TEST_CASE("request keys depend on path and every parameter") {
  Request a{"/esearch", {{"term", "x"}, {"retstart", "0"}}};
  Request b{"/esearch", {{"term", "x"}, {"retstart", "10"}}};
  Request c{"/efetch", {{"term", "x"}, {"retstart", "0"}}};
  CHECK(request_key(a).size() == 16);
  CHECK(request_key(a) != request_key(b));
  CHECK(request_key(a) != request_key(c));
  CHECK(request_key(a) == request_key(Request{"/esearch", {{"retstart", "0"}, {"term", "x"}}}));
}

TEST_CASE("property: every id arrives exactly once under random faults and restarts") {
  std::mt19937_64 rng(20130115);
  for (int round = 0; round < 6; ++round) {
    int n = 1 + static_cast<int>(rng() % 30);
    int page = 1 + static_cast<int>(rng() % 7);
    auto corpus = numbered_corpus(n);
    MockServer server(corpus);
    for (int f = 0; f < 4; ++f) {
      bool search = rng() % 2;
      int status = std::vector<int>{429, 500, 502, 503}[rng() % 4];
      MockFault fault{search ? "/esearch" : "/efetch", {}, 1 + static_cast<int>(rng() % 2), status, 0ms};
      if (search) fault.match["retstart"] = std::to_string((rng() % ((n + page - 1) / page)) * page);
      server.add_fault(fault);
    }
    server.start();
    HttpTransport http(server.base_url(), 2s);
    SystemClock clock;
    estmap::testing::TempDir tmp("prop");
    auto job = fast_job(page);
    job.max_retries = 8;
    job.cursor_file = tmp / "cursor.json";

    std::vector<std::string> got;
    int kill_after = static_cast<int>(rng() % 4);
    for (int attempt = 0; attempt < 2; ++attempt) {
      Harvester h(job, http, clock);
      int pages = 0;
      try {
        h.run([&](const IdPage&, const FetchResult& f) {
          if (attempt == 0 && pages == kill_after) throw std::runtime_error("killed");
          ++pages;
          for (const auto& p : f.payloads) got.push_back(p.id);
        });
        break;
      } catch (const std::runtime_error&) {
      }
    }
    std::vector<std::string> expected;
    for (const auto& e : corpus) expected.push_back(e.id);
    CHECK(got == expected);
  }
}
