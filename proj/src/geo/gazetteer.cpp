#include "estmap/geo/gazetteer.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"
#include "estmap/util/text.hpp"

namespace estmap::geo {

namespace {

bool has_digit(std::string_view s) {
  return std::any_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

std::string without_digit_words(std::string_view s) {
  std::vector<std::string> kept;
  for (auto& w : text::split_trimmed(s, ' ')) {
    if (!has_digit(w)) kept.push_back(w);
  }
  return text::join(kept, " ");
}

/// Readings of one address segment, most literal first.
std::vector<std::string> readings(std::string_view segment) {
  std::vector<std::string> out;
  auto add = [&](std::string s) {
    if (!s.empty() && std::find(out.begin(), out.end(), s) == out.end()) out.push_back(std::move(s));
  };
  add(std::string(text::trim(segment)));
  auto plain = without_digit_words(segment);
  add(plain);
  auto words = text::split_trimmed(plain, ' ');
  if (words.size() > 1) {
    add(words.back());
    add(text::join(std::vector<std::string>(words.begin(), words.end() - 1), " "));
  }
  return out;
}

std::vector<std::string> tab_columns(std::string_view line) {
  auto cols = text::split(line, '\t');
  for (auto& c : cols) c = std::string(text::trim(c));
  return cols;
}

}  // namespace

Gazetteer Gazetteer::parse(std::string_view tsv) {
  Gazetteer g;
  std::size_t line_no = 0;
  for (auto& line : text::split(tsv, '\n')) {
    ++line_no;
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cols = tab_columns(t);
    if (cols.size() != 4) throw ParseError("gazetteer row needs city, country, lat, lon", line_no);
    auto lat = text::parse_double(cols[2]);
    auto lon = text::parse_double(cols[3]);
    if (!lat || !lon) throw ParseError("gazetteer coordinates are not numbers", line_no);
    if (*lat < -90 || *lat > 90 || *lon < -180 || *lon > 180) {
      throw ParseError("gazetteer coordinates out of range", line_no);
    }
    if (cols[0].empty() || cols[1].empty()) throw ParseError("gazetteer row has an empty name", line_no);
    try {
      g.add_site({cols[0], cols[1], *lat, *lon});
    } catch (const InputError& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return g;
}

Gazetteer Gazetteer::load(const std::string& path) { return parse(io::read_file(path)); }

void Gazetteer::parse_aliases(std::string_view tsv) {
  std::size_t line_no = 0;
  for (auto& line : text::split(tsv, '\n')) {
    ++line_no;
    auto t = text::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto cols = tab_columns(t);
    if (cols.size() != 2 || cols[0].empty() || cols[1].empty()) {
      throw ParseError("alias row needs from and to", line_no);
    }
    add_alias(cols[0], cols[1]);
  }
}

void Gazetteer::load_aliases(const std::string& path) { parse_aliases(io::read_file(path)); }

void Gazetteer::add_site(GeoSite site) {
  auto key = std::make_pair(text::fold_key(site.city), text::fold_key(site.country));
  if (index_.count(key)) throw InputError("duplicate gazetteer entry " + site.label());
  index_.emplace(std::move(key), sites_.size());
  sites_.push_back(std::move(site));
}

void Gazetteer::add_alias(std::string_view from, std::string_view to) {
  aliases_[text::fold_key(from)] = text::fold_key(to);
}

std::string Gazetteer::canonical_key(std::string_view name) const {
  auto key = text::fold_key(name);
  auto it = aliases_.find(key);
  return it == aliases_.end() ? key : it->second;
}

const GeoSite* Gazetteer::find(std::string_view city, std::string_view country) const {
  auto it = index_.find({canonical_key(city), canonical_key(country)});
  return it == index_.end() ? nullptr : &sites_[it->second];
}

const GeoSite* Gazetteer::resolve(const Affiliation& a) const {
  if (a.city && a.country) {
    if (const auto* s = find(*a.city, *a.country)) return s;
  }
  std::string_view raw = text::trim(a.raw);
  while (!raw.empty() && (raw.back() == '.' || raw.back() == ';')) raw.remove_suffix(1);
  auto segments = text::split_trimmed(raw, ',');
  if (segments.empty()) return nullptr;
  for (const auto& country : readings(segments.back())) {
    for (std::size_t i = segments.size(); i-- > 0;) {
      for (const auto& city : readings(segments[i])) {
        if (const auto* s = find(city, country)) return s;
      }
    }
  }
  return nullptr;
}

GeocodeResult geocode(const std::vector<Affiliation>& affiliations, const Gazetteer& gazetteer) {
  GeocodeResult out;
  out.resolved.reserve(affiliations.size());
  for (const auto& a : affiliations) {
    if (const auto* s = gazetteer.resolve(a)) {
      out.resolved.emplace_back(*s);
    } else {
      out.resolved.emplace_back(std::nullopt);
      out.unresolved.push_back(a.raw);
    }
  }
  return out;
}

std::vector<const GeoSite*> record_sites(const Record& record, const Gazetteer& gazetteer) {
  std::set<const GeoSite*> seen;
  for (const auto& a : record.affiliations) {
    if (const auto* s = gazetteer.resolve(a)) seen.insert(s);
  }
  std::vector<const GeoSite*> out(seen.begin(), seen.end());
  // Pointers into one vector, so address order is gazetteer order.
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t annotate(std::vector<Record>& records, const Gazetteer& gazetteer) {
  std::size_t missed = 0;
  for (auto& r : records) {
    for (auto& a : r.affiliations) {
      const auto* s = gazetteer.resolve(a);
      if (!s) {
        ++missed;
        continue;
      }
      a.city = s->city;
      a.country = s->country;
      a.geocode = GeoPoint{s->lat, s->lon};
    }
  }
  return missed;
}

}  // namespace estmap::geo
