#include "estmap/records/store.hpp"

#include <mutex>

#include "estmap/records/serialize.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"
#include "estmap/util/text.hpp"

namespace estmap {

using nlohmann::json;

namespace {
constexpr const char* kFormatName = "estmap-record-store";
}

RecordStore::RecordStore(const RecordStore& other) {
  std::shared_lock lock(other.mutex_);
  records_ = other.records_;
}

RecordStore& RecordStore::operator=(const RecordStore& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_);
  std::shared_lock other_lock(other.mutex_);
  records_ = other.records_;
  return *this;
}

RecordStore RecordStore::parse(std::string_view text_in) {
  RecordStore store;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<Record> records;
  for (auto& line : text::split(text_in, '\n')) {
    ++line_no;
    auto t = text::trim(line);
    if (t.empty()) continue;
    json j;
    try {
      j = json::parse(t);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("invalid JSON in store: ") + e.what(), line_no);
    }
    if (!header_seen) {
      if (!j.is_object() || j.value("format", "") != kFormatName) {
        throw ParseError("store file lacks the format header line", line_no);
      }
      if (j.value("version", 0) != kSchemaVersion) {
        throw ParseError("unsupported store schema version " + j.value("version", json(0)).dump(), line_no);
      }
      header_seen = true;
      continue;
    }
    try {
      records.push_back(record_from_json(j));
    } catch (const InputError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  store.upsert(std::move(records));
  return store;
}

RecordStore RecordStore::load(const std::filesystem::path& path) { return parse(io::read_file(path)); }

std::string RecordStore::serialize() const {
  std::shared_lock lock(mutex_);
  std::string out = json{{"format", kFormatName}, {"version", kSchemaVersion}}.dump();
  out += '\n';
  for (const auto& [id, r] : records_) {
    out += to_json(r).dump();
    out += '\n';
  }
  return out;
}

void RecordStore::save(const std::filesystem::path& path) const { io::write_file_atomic(path, serialize()); }

MergeReport RecordStore::upsert(std::vector<Record> records) {
  for (const auto& r : records) {
    auto problems = validate(r);
    if (!problems.empty()) throw InputError("record " + r.id + ": " + problems.front());
  }
  MergeReport report;
  std::unique_lock lock(mutex_);
  for (auto& r : records) {
    auto it = records_.find(r.id);
    if (it == records_.end()) {
      ++report.added;
      auto id = r.id;
      records_.emplace(std::move(id), std::move(r));
    } else {
      report.replaced.push_back(r.id);
      it->second = std::move(r);
    }
  }
  return report;
}

std::optional<Record> RecordStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = records_.find(id);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

bool RecordStore::contains(const std::string& id) const {
  std::shared_lock lock(mutex_);
  return records_.count(id) != 0;
}

std::size_t RecordStore::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

std::vector<Record> RecordStore::all() const {
  std::shared_lock lock(mutex_);
  std::vector<Record> out;
  out.reserve(records_.size());
  for (const auto& [id, r] : records_) out.push_back(r);
  return out;
}

std::vector<Record> RecordStore::resolve(const Corpus& corpus) const {
  std::shared_lock lock(mutex_);
  std::vector<Record> out;
  out.reserve(corpus.record_ids.size());
  for (const auto& id : corpus.record_ids) {
    auto it = records_.find(id);
    if (it == records_.end()) throw InputError("corpus '" + corpus.name + "' references unknown record " + id);
    out.push_back(it->second);
  }
  return out;
}

}  // namespace estmap
