#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace estmap::harvest {

/// Scripted failure: the next `times` requests to `path` whose params contain
/// every pair in `match` are answered with `status` (after `delay`).
struct MockFault {
  std::string path;
  std::map<std::string, std::string> match;
  int times = 1;
  int status = 503;
  std::chrono::milliseconds delay{0};
};

struct LoggedRequest {
  std::chrono::steady_clock::time_point at;
  std::string path;
  std::map<std::string, std::string> params;
  int status = 0;
};

/// In-process search/fetch server on 127.0.0.1 and an ephemeral port. Every
/// query term matches the whole corpus; ids are served in corpus order.
class MockServer {
public:
  struct Entry {
    std::string id;
    std::string payload;
  };

  explicit MockServer(std::vector<Entry> corpus);
  ~MockServer();
  MockServer(const MockServer&) = delete;
  MockServer& operator=(const MockServer&) = delete;

  /// One entry per regular file; the id is the file stem.
  static std::vector<Entry> corpus_from_directory(const std::filesystem::path& dir);

  void start();
  void stop();
  int port() const { return port_; }
  std::string base_url() const;

  void add_fault(MockFault fault);
  std::vector<LoggedRequest> log() const;
  void clear_log();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  std::vector<Entry> corpus_;
  std::map<std::string, std::size_t> index_;
  mutable std::mutex mutex_;
  std::vector<MockFault> faults_;
  std::vector<LoggedRequest> log_;
  std::thread thread_;
  int port_ = 0;
};

}  // namespace estmap::harvest
