#pragma once

#include <chrono>
#include <filesystem>
#include <map>
#include <memory>
#include <string>

namespace estmap::harvest {

struct Request {
  std::string path;                          // "/esearch", "/efetch"
  std::map<std::string, std::string> params;  // sorted, so keys are stable
};

struct Response {
  int status = 0;
  std::string body;
  /// Connection failure or timeout; no HTTP status was received.
  bool transport_error = false;
  std::string error;
};

/// Stable key for a request: FNV-1a 64 over "path?k=v&k=v", as 16 hex digits.
std::string request_key(const Request& request);

class Transport {
public:
  virtual ~Transport() = default;
  virtual Response get(const Request& request) = 0;
};

/// Plain HTTP GET against `base_url` ("http://host:port[/prefix]").
class HttpTransport final : public Transport {
public:
  HttpTransport(std::string base_url, std::chrono::milliseconds timeout, std::string api_key = {});
  ~HttpTransport() override;
  Response get(const Request& request) override;

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Offline mode: answers from `<dir>/<request_key>.json`; a missing file is
/// a 404.
class FixtureTransport final : public Transport {
public:
  explicit FixtureTransport(std::filesystem::path dir);
  Response get(const Request& request) override;

private:
  std::filesystem::path dir_;
};

/// Forwards to another transport and stores each 200 response in the fixture
/// layout FixtureTransport reads.
class RecordingTransport final : public Transport {
public:
  RecordingTransport(Transport& inner, std::filesystem::path dir);
  Response get(const Request& request) override;

private:
  Transport& inner_;
  std::filesystem::path dir_;
};

/// Environment variable that overrides the configured endpoint.
inline constexpr const char* kEndpointEnv = "ESTMAP_HARVEST_ENDPOINT";
inline constexpr const char* kApiKeyEnv = "ESTMAP_HARVEST_API_KEY";

}  // namespace estmap::harvest
