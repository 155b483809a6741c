#include "estmap/harvest/transport.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>

#include <httplib.h>

#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"

namespace estmap::harvest {

namespace {

std::string canonical_request(const Request& r) {
  std::string s = r.path;
  char sep = '?';
  for (const auto& [k, v] : r.params) {
    s += sep;
    s += k;
    s += '=';
    s += v;
    sep = '&';
  }
  return s;
}

}  // namespace

std::string request_key(const Request& request) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : canonical_request(request)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct HttpTransport::Impl {
  std::string prefix;
  std::unique_ptr<httplib::Client> client;
  httplib::Headers headers;
};

HttpTransport::HttpTransport(std::string base_url, std::chrono::milliseconds timeout, std::string api_key)
    : impl_(std::make_unique<Impl>()) {
  auto scheme_end = base_url.find("://");
  if (scheme_end == std::string::npos) throw InputError("endpoint must look like http://host:port, got " + base_url);
  auto path_start = base_url.find('/', scheme_end + 3);
  std::string origin = path_start == std::string::npos ? base_url : base_url.substr(0, path_start);
  impl_->prefix = path_start == std::string::npos ? std::string{} : base_url.substr(path_start);
  while (!impl_->prefix.empty() && impl_->prefix.back() == '/') impl_->prefix.pop_back();
  impl_->client = std::make_unique<httplib::Client>(origin);
  impl_->client->set_connection_timeout(timeout);
  impl_->client->set_read_timeout(timeout);
  impl_->client->set_write_timeout(timeout);
  if (!api_key.empty()) impl_->headers.emplace("api-key", api_key);
}

HttpTransport::~HttpTransport() = default;

Response HttpTransport::get(const Request& request) {
  httplib::Params params(request.params.begin(), request.params.end());
  auto res = impl_->client->Get(impl_->prefix + request.path, params, impl_->headers);
  Response out;
  if (!res) {
    out.transport_error = true;
    out.error = httplib::to_string(res.error());
    return out;
  }
  out.status = res->status;
  out.body = res->body;
  return out;
}

FixtureTransport::FixtureTransport(std::filesystem::path dir) : dir_(std::move(dir)) {}

Response FixtureTransport::get(const Request& request) {
  auto file = dir_ / (request_key(request) + ".json");
  Response out;
  if (!std::filesystem::exists(file)) {
    out.status = 404;
    out.body = "no fixture for " + request.path;
    return out;
  }
  out.status = 200;
  out.body = io::read_file(file);
  return out;
}

RecordingTransport::RecordingTransport(Transport& inner, std::filesystem::path dir)
    : inner_(inner), dir_(std::move(dir)) {}

Response RecordingTransport::get(const Request& request) {
  auto res = inner_.get(request);
  if (!res.transport_error && res.status == 200) {
    io::write_file_atomic(dir_ / (request_key(request) + ".json"), res.body);
  }
  return res;
}

}  // namespace estmap::harvest
