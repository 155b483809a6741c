#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "estmap/records/record.hpp"

namespace estmap::geo {

struct GeoSite {
  std::string city;
  std::string country;
  double lat = 0.0;
  double lon = 0.0;

  bool operator==(const GeoSite&) const = default;
  /// "City, Country"; unique within a gazetteer.
  std::string label() const { return city + ", " + country; }
};

/// (city, country) -> coordinates, with an alias table that maps alternative
/// spellings ("UK", "Muenchen") to the gazetteer's names. Lookups compare
/// folded keys only; there is no fuzzy matching.
class Gazetteer {
public:
  /// Tab-separated city, country, lat, lon. Blank lines and '#' lines are
  /// skipped; anything else malformed throws ParseError with the line.
  static Gazetteer parse(std::string_view tsv);
  static Gazetteer load(const std::string& path);

  /// Tab-separated from, to.
  void parse_aliases(std::string_view tsv);
  void load_aliases(const std::string& path);

  void add_site(GeoSite site);
  void add_alias(std::string_view from, std::string_view to);

  const GeoSite* find(std::string_view city, std::string_view country) const;
  /// Tries the affiliation's address segments right to left against the
  /// gazetteer; nullptr when nothing matches exactly.
  const GeoSite* resolve(const Affiliation& affiliation) const;

  std::size_t size() const { return sites_.size(); }
  const std::vector<GeoSite>& sites() const { return sites_; }

private:
  std::string canonical_key(std::string_view name) const;

  std::vector<GeoSite> sites_;
  std::map<std::pair<std::string, std::string>, std::size_t> index_;  // folded (city, country)
  std::map<std::string, std::string> aliases_;                        // folded -> folded
};

struct GeocodeResult {
  /// One entry per input affiliation, in order.
  std::vector<std::optional<GeoSite>> resolved;
  /// Raw text of affiliations that did not resolve, in order.
  std::vector<std::string> unresolved;
};

GeocodeResult geocode(const std::vector<Affiliation>& affiliations, const Gazetteer& gazetteer);

/// Distinct sites on a record, in gazetteer order (whole counting).
std::vector<const GeoSite*> record_sites(const Record& record, const Gazetteer& gazetteer);

/// Fills city, country and geocode on every affiliation that resolves.
/// Returns the number of affiliations left unresolved.
std::size_t annotate(std::vector<Record>& records, const Gazetteer& gazetteer);

}  // namespace estmap::geo
