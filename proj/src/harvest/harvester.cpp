#include "estmap/harvest/harvester.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "estmap/util/io.hpp"
#include "estmap/util/text.hpp"

namespace estmap::harvest {

using nlohmann::json;

bool is_transient(const Response& r) {
  return r.transport_error || r.status == 429 || (r.status >= 500 && r.status <= 599);
}

Harvester::Harvester(HarvestJob job, Transport& transport, Clock& clock)
    : job_(std::move(job)),
      transport_(transport),
      clock_(clock),
      bucket_(job_.rate_limit, job_.burst, clock),
      jitter_(job_.backoff.seed) {
  if (job_.page_size < 1) throw InputError("page_size must be at least 1");
  if (job_.max_retries < 0) throw InputError("max_retries must not be negative");
  auto start = text::parse_int(job_.cursor);
  if (!start || *start < 0) throw InputError("cursor must be a non-negative integer, got '" + job_.cursor + "'");
  cursor_ = *start;
  load_cursor();
}

void Harvester::load_cursor() {
  if (!job_.cursor_file || !std::filesystem::exists(*job_.cursor_file)) return;
  json j;
  try {
    j = json::parse(io::read_file(*job_.cursor_file));
  } catch (const json::exception& e) {
    throw InputError("unreadable cursor file " + job_.cursor_file->string() + ": " + e.what());
  }
  if (j.value("query", "") != job_.query_text || j.value("db", "") != std::string(to_string(job_.source_db))) {
    throw InputError("cursor file " + job_.cursor_file->string() + " belongs to a different job");
  }
  cursor_ = j.at("retstart").get<long long>();
}

void Harvester::save_cursor() const {
  if (!job_.cursor_file) return;
  json j{{"query", job_.query_text}, {"db", std::string(to_string(job_.source_db))}, {"retstart", cursor_}};
  io::write_file_atomic(*job_.cursor_file, j.dump() + "\n");
}

Nanos Harvester::backoff_delay(int attempt) {
  // Full jitter: uniform in [0, min(cap, base * factor^attempt)].
  double ceiling = static_cast<double>(std::chrono::duration_cast<Nanos>(job_.backoff.base).count()) *
                   std::pow(job_.backoff.factor, attempt);
  ceiling = std::min(ceiling, static_cast<double>(std::chrono::duration_cast<Nanos>(job_.backoff.cap).count()));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return Nanos(static_cast<Nanos::rep>(std::llround(u(jitter_) * ceiling)));
}

Response Harvester::send(const Request& request) {
  for (int attempt = 0;; ++attempt) {
    stats_.dispatch_times.push_back(bucket_.acquire());
    ++stats_.requests;
    Response r = transport_.get(request);
    if (!r.transport_error && r.status >= 200 && r.status < 300) return r;
    std::string what = r.transport_error ? "transport error: " + r.error : "HTTP " + std::to_string(r.status);
    if (!is_transient(r)) {
      throw HarvestError(request.path + " failed with " + what + ": " + r.body.substr(0, 200), r.status);
    }
    if (attempt >= job_.max_retries) {
      throw HarvestError(request.path + " still failing after " + std::to_string(job_.max_retries) +
                             " retries (" + what + ")",
                         r.status);
    }
    ++stats_.retries;
    clock_.sleep_for(backoff_delay(attempt));
  }
}

void Harvester::search(const std::function<void(const IdPage&)>& sink) {
  const std::string db(to_string(job_.source_db));
  for (;;) {
    Request req{"/esearch",
                {{"db", db},
                 {"term", job_.query_text},
                 {"retstart", std::to_string(cursor_)},
                 {"retmax", std::to_string(job_.page_size)}}};
    Response r = send(req);
    IdPage page;
    try {
      json j = json::parse(r.body);
      page.total = j.at("count").get<long long>();
      page.retstart = j.value("retstart", cursor_);
      page.ids = j.at("idlist").get<std::vector<std::string>>();
    } catch (const json::exception& e) {
      throw HarvestError(std::string("malformed search reply: ") + e.what(), r.status);
    }
    if (page.ids.empty()) return;
    if (static_cast<long long>(page.ids.size()) > job_.page_size) {
      throw HarvestError("server returned more ids than retmax", r.status);
    }
    sink(page);
    cursor_ += static_cast<long long>(page.ids.size());
    save_cursor();
    if (cursor_ >= page.total) return;
  }
}

FetchResult Harvester::fetch_records(const std::vector<std::string>& ids) {
  FetchResult out;
  const std::string db(to_string(job_.source_db));
  for (std::size_t at = 0; at < ids.size(); at += static_cast<std::size_t>(job_.page_size)) {
    auto end = std::min(ids.size(), at + static_cast<std::size_t>(job_.page_size));
    std::vector<std::string> batch(ids.begin() + static_cast<std::ptrdiff_t>(at),
                                   ids.begin() + static_cast<std::ptrdiff_t>(end));
    Response r = send(Request{"/efetch", {{"db", db}, {"id", text::join(batch, ",")}}});
    try {
      json j = json::parse(r.body);
      for (const auto& rec : j.at("records")) {
        out.payloads.push_back({rec.at("id").get<std::string>(), rec.at("payload").get<std::string>()});
      }
      if (j.contains("missing")) {
        for (const auto& id : j.at("missing")) {
          out.warnings.push_back("unknown id " + id.get<std::string>() + " skipped");
        }
      }
    } catch (const json::exception& e) {
      throw HarvestError(std::string("malformed fetch reply: ") + e.what(), r.status);
    }
  }
  return out;
}

void Harvester::run(const std::function<void(const IdPage&, const FetchResult&)>& sink) {
  search([&](const IdPage& page) { sink(page, fetch_records(page.ids)); });
}

}  // namespace estmap::harvest
