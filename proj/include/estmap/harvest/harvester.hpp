#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "estmap/harvest/clock.hpp"
#include "estmap/harvest/rate_limit.hpp"
#include "estmap/harvest/transport.hpp"
#include "estmap/records/record.hpp"
#include "estmap/util/error.hpp"

namespace estmap::harvest {

/// Aborted harvest: non-transient status, exhausted retries or a bad reply.
class HarvestError : public Error {
public:
  HarvestError(const std::string& what, int status) : Error(what), status_(status) {}
  int status() const { return status_; }

private:
  int status_;
};

struct Backoff {
  std::chrono::milliseconds base{500};
  double factor = 2.0;
  std::chrono::milliseconds cap{60'000};
  std::uint64_t seed = 0x5eedULL;
};

struct HarvestJob {
  std::string query_text;
  SourceDb source_db = SourceDb::medline;
  int page_size = 100;
  /// Next retstart. Overwritten by the cursor file when one exists.
  std::string cursor = "0";
  int max_retries = 5;
  double rate_limit = 3.0;  // requests per second
  int burst = 1;
  std::optional<std::filesystem::path> cursor_file;
  Backoff backoff;
};

/// One page of search results, in server order.
struct IdPage {
  long long retstart = 0;
  long long total = 0;
  std::vector<std::string> ids;
};

struct Payload {
  std::string id;
  std::string bytes;
};

struct FetchResult {
  std::vector<Payload> payloads;
  std::vector<std::string> warnings;
};

struct HarvestStats {
  int requests = 0;
  int retries = 0;
  std::vector<Nanos> dispatch_times;
};

/// Drives search/fetch against one endpoint. Requests from one Harvester are
/// strictly sequential and share its rate limit.
class Harvester {
public:
  Harvester(HarvestJob job, Transport& transport, Clock& clock);

  /// Walks the result list from the cursor, handing each page to `sink`. The
  /// cursor is persisted after `sink` returns, so a page whose sink threw is
  /// requested again on resume.
  void search(const std::function<void(const IdPage&)>& sink);

  /// Fetches payloads in batches of at most page_size. Ids the server does not
  /// know produce a warning rather than an error.
  FetchResult fetch_records(const std::vector<std::string>& ids);

  /// search + fetch_records for every page; payloads go to `sink` page by page.
  void run(const std::function<void(const IdPage&, const FetchResult&)>& sink);

  const HarvestStats& stats() const { return stats_; }
  const HarvestJob& job() const { return job_; }
  long long cursor() const { return cursor_; }

private:
  Response send(const Request& request);
  void load_cursor();
  void save_cursor() const;
  Nanos backoff_delay(int attempt);

  HarvestJob job_;
  Transport& transport_;
  Clock& clock_;
  TokenBucket bucket_;
  HarvestStats stats_;
  long long cursor_ = 0;
  std::mt19937_64 jitter_;
};

bool is_transient(const Response& response);

}  // namespace estmap::harvest
