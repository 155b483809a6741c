#include "estmap/records/serialize.hpp"

#include "estmap/util/error.hpp"

namespace estmap {

using nlohmann::json;

namespace {

template <typename T>
T required(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

template <typename T>
std::optional<T> optional_field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw InputError(std::string("field '") + key + "' has the wrong type");
  }
}

}  // namespace

json to_json(const Record& r) {
  json j;
  j["id"] = r.id;
  j["kind"] = to_string(r.kind);
  j["source_db"] = to_string(r.source_db);
  j["title"] = r.title;
  if (r.abstract_text) j["abstract"] = *r.abstract_text;
  if (r.claims) j["claims"] = *r.claims;
  j["year"] = r.year;
  j["authors"] = r.authors;
  json affs = json::array();
  for (const auto& a : r.affiliations) {
    json aj;
    aj["raw"] = a.raw;
    if (a.organisation) aj["organisation"] = *a.organisation;
    if (a.city) aj["city"] = *a.city;
    if (a.country) aj["country"] = *a.country;
    if (a.geocode) {
      aj["lat"] = a.geocode->lat;
      aj["lon"] = a.geocode->lon;
    }
    affs.push_back(std::move(aj));
  }
  j["affiliations"] = std::move(affs);
  if (r.citation_count) j["citation_count"] = *r.citation_count;
  json codes = json::array();
  for (const auto& c : r.codes) codes.push_back({{"scheme", to_string(c.scheme)}, {"code", c.code}});
  j["codes"] = std::move(codes);
  if (r.journal) j["journal"] = *r.journal;
  if (!r.mesh_headings.empty()) j["mesh_headings"] = r.mesh_headings;
  return j;
}

Record record_from_json(const json& j) {
  if (!j.is_object()) throw InputError("record must be an object");
  Record r;
  r.id = required<std::string>(j, "id");
  r.kind = record_kind_from_string(required<std::string>(j, "kind"));
  r.source_db = source_db_from_string(required<std::string>(j, "source_db"));
  r.title = required<std::string>(j, "title");
  r.abstract_text = optional_field<std::string>(j, "abstract");
  r.claims = optional_field<std::string>(j, "claims");
  r.year = required<int>(j, "year");
  r.authors = optional_field<std::vector<std::string>>(j, "authors").value_or(std::vector<std::string>{});
  if (auto it = j.find("affiliations"); it != j.end()) {
    for (const auto& aj : *it) {
      Affiliation a;
      a.raw = required<std::string>(aj, "raw");
      a.organisation = optional_field<std::string>(aj, "organisation");
      a.city = optional_field<std::string>(aj, "city");
      a.country = optional_field<std::string>(aj, "country");
      auto lat = optional_field<double>(aj, "lat");
      auto lon = optional_field<double>(aj, "lon");
      if (lat && lon) a.geocode = GeoPoint{*lat, *lon};
      r.affiliations.push_back(std::move(a));
    }
  }
  r.citation_count = optional_field<long long>(j, "citation_count");
  if (auto it = j.find("codes"); it != j.end()) {
    for (const auto& cj : *it) {
      r.codes.push_back(CodeTag{code_scheme_from_string(required<std::string>(cj, "scheme")),
                                required<std::string>(cj, "code")});
    }
  }
  r.journal = optional_field<std::string>(j, "journal");
  r.mesh_headings =
      optional_field<std::vector<std::string>>(j, "mesh_headings").value_or(std::vector<std::string>{});
  return r;
}

json to_json(const Corpus& c) {
  json j;
  j["name"] = c.name;
  j["record_ids"] = c.record_ids;
  j["provenance"] = {{"query_text", c.provenance.query_text},
                     {"source_db", to_string(c.provenance.source_db)},
                     {"retrieved_on", c.provenance.retrieved_on}};
  return j;
}

Corpus corpus_from_json(const json& j) {
  Corpus c;
  c.name = required<std::string>(j, "name");
  for (const auto& id : required<std::vector<std::string>>(j, "record_ids")) c.record_ids.insert(id);
  const auto& p = j.at("provenance");
  c.provenance.query_text = required<std::string>(p, "query_text");
  c.provenance.source_db = source_db_from_string(required<std::string>(p, "source_db"));
  c.provenance.retrieved_on = required<std::string>(p, "retrieved_on");
  return c;
}

}  // namespace estmap
