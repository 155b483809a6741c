#include "estmap/harvest/mock_server.hpp"

#include <algorithm>

#include <httplib.h>
#include <json.hpp>

#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"
#include "estmap/util/text.hpp"

namespace estmap::harvest {

using nlohmann::json;

struct MockServer::Impl {
  httplib::Server server;
};

MockServer::MockServer(std::vector<Entry> corpus) : impl_(std::make_unique<Impl>()), corpus_(std::move(corpus)) {
  for (std::size_t i = 0; i < corpus_.size(); ++i) {
    if (!index_.emplace(corpus_[i].id, i).second) throw InputError("duplicate mock id " + corpus_[i].id);
  }
}

MockServer::~MockServer() { stop(); }

std::vector<MockServer::Entry> MockServer::corpus_from_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file()) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Entry> out;
  for (const auto& f : files) out.push_back({f.stem().string(), io::read_file(f)});
  return out;
}

std::string MockServer::base_url() const { return "http://127.0.0.1:" + std::to_string(port_); }

void MockServer::add_fault(MockFault fault) {
  std::lock_guard lock(mutex_);
  faults_.push_back(std::move(fault));
}

std::vector<LoggedRequest> MockServer::log() const {
  std::lock_guard lock(mutex_);
  return log_;
}

void MockServer::clear_log() {
  std::lock_guard lock(mutex_);
  log_.clear();
}

void MockServer::start() {
  auto& srv = impl_->server;
  auto handle = [this](const std::string& path, const httplib::Request& req, httplib::Response& res) {
    auto arrived = std::chrono::steady_clock::now();
    std::map<std::string, std::string> params(req.params.begin(), req.params.end());
    int status = 200;
    std::chrono::milliseconds delay{0};
    {
      std::lock_guard lock(mutex_);
      for (auto& f : faults_) {
        if (f.times <= 0 || f.path != path) continue;
        bool hit = std::all_of(f.match.begin(), f.match.end(), [&](const auto& kv) {
          auto it = params.find(kv.first);
          return it != params.end() && it->second == kv.second;
        });
        if (!hit) continue;
        --f.times;
        status = f.status;
        delay = f.delay;
        break;
      }
      log_.push_back({arrived, path, params, status});
    }
    if (delay.count() > 0) std::this_thread::sleep_for(delay);
    if (status != 200) {
      res.status = status;
      res.set_content("scripted failure", "text/plain");
      return;
    }
    if (path == "/esearch") {
      auto start = text::parse_int(params["retstart"]).value_or(0);
      auto max = text::parse_int(params["retmax"]).value_or(20);
      json ids = json::array();
      auto n = static_cast<long long>(corpus_.size());
      for (long long i = std::max(0LL, start); i < std::min(n, start + max); ++i) {
        ids.push_back(corpus_[static_cast<std::size_t>(i)].id);
      }
      res.set_content(json{{"count", n}, {"retstart", start}, {"idlist", ids}}.dump(), "application/json");
    } else {
      json records = json::array();
      json missing = json::array();
      for (const auto& id : text::split_trimmed(params["id"], ',')) {
        auto it = index_.find(id);
        if (it == index_.end()) {
          missing.push_back(id);
        } else {
          records.push_back({{"id", id}, {"payload", corpus_[it->second].payload}});
        }
      }
      res.set_content(json{{"records", records}, {"missing", missing}}.dump(), "application/json");
    }
  };
  srv.Get("/esearch", [handle](const httplib::Request& q, httplib::Response& r) { handle("/esearch", q, r); });
  srv.Get("/efetch", [handle](const httplib::Request& q, httplib::Response& r) { handle("/efetch", q, r); });
  port_ = srv.bind_to_any_port("127.0.0.1");
  if (port_ <= 0) throw Error("mock server could not bind a local port");
  thread_ = std::thread([&srv] { srv.listen_after_bind(); });
  srv.wait_until_ready();
}

void MockServer::stop() {
  if (!thread_.joinable()) return;
  impl_->server.stop();
  thread_.join();
}

}  // namespace estmap::harvest
