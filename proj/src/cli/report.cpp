#include "estmap/cli/report.hpp"

#include <algorithm>

#include "estmap/util/error.hpp"

namespace estmap::cli {

namespace {

bool has_citations(const std::vector<Record>& records) {
  return !records.empty() &&
         std::all_of(records.begin(), records.end(), [](const Record& r) { return r.citation_count.has_value(); });
}

}  // namespace

Summary run_report(Workspace& ws, const std::function<void(const Summary&)>& emit) {
  auto note = [&](const Summary& s) {
    if (emit) emit(s);
  };
  nlohmann::ordered_json refusals = nlohmann::ordered_json::array();
  nlohmann::ordered_json skipped = nlohmann::ordered_json::array();
  auto skip = [&](std::string step, SourceDb db, std::string reason) {
    nlohmann::ordered_json j;
    j["step"] = std::move(step);
    j["db"] = to_string(db);
    j["reason"] = std::move(reason);
    skipped.push_back(j);
  };

  const auto dbs = ws.databases();
  for (auto db : dbs) note(step_delineate(ws, db));
  note(step_windows(ws));
  const auto& windows = ws.windows();
  for (auto db : dbs) note(step_counts(ws, db));
  for (std::size_t i = 0; i < dbs.size(); ++i) {
    for (std::size_t j = i + 1; j < dbs.size(); ++j) note(step_trends(ws, dbs[i], dbs[j]));
  }

  for (auto db : dbs) {
    const auto& records = ws.corpus_records(db);
    if (!ws.has_gazetteer()) {
      skip("geomap", db, "no gazetteer configured");
    } else if (!has_citations(records)) {
      skip("geomap", db, "records carry no citation counts");
    } else {
      for (const auto& w : windows) {
        try {
          note(step_geomap(ws, db, w, {"geojson", "kml", "json"}));
        } catch (const SampleTooSmall& e) {
          nlohmann::ordered_json j;
          j["step"] = "geomap";
          j["db"] = to_string(db);
          j["window"] = w.label();
          j["reason"] = e.what();
          refusals.push_back(j);
        }
      }
    }
    if (ws.has_gazetteer()) {
      for (const auto& w : windows) note(step_collabmap(ws, db, w));
    }
    note(step_netreport(ws, db, network::Level::city, windows, {"graphml", "svg", "json"}));
    note(step_netreport(ws, db, network::Level::org, windows, {"graphml", "svg", "json"}));
    for (auto scheme : schemes_for(db)) {
      if (!ws.has_basemap(scheme)) {
        skip("overlay", db, "no " + std::string(to_string(scheme)) + " basemap configured");
        continue;
      }
      note(step_overlay(ws, db, scheme, windows, {"svg", "json"}));
      note(step_diversity(ws, db, scheme, windows));
    }
  }

  nlohmann::ordered_json index;
  index["case"] = ws.manifest().case_name;
  index["seed"] = ws.seed();
  index["retrieved_on"] = ws.manifest().retrieved_on;
  nlohmann::ordered_json queries = nlohmann::ordered_json::object();
  for (const auto& [db, q] : ws.manifest().queries) queries[std::string(to_string(db))] = q;
  index["queries"] = queries;
  nlohmann::ordered_json labels = nlohmann::ordered_json::array();
  for (const auto& w : windows) labels.push_back(w.label());
  index["windows"] = labels;
  nlohmann::ordered_json artifacts = nlohmann::ordered_json::array();
  for (const auto& a : ws.artifacts()) {
    nlohmann::ordered_json j;
    j["path"] = a.path;
    j["format"] = a.format;
    j["step"] = a.step;
    artifacts.push_back(j);
  }
  index["artifacts"] = artifacts;
  index["refusals"] = refusals;
  index["skipped"] = skipped;
  const auto count = artifacts.size();
  ws.write("index.json", index.dump(1) + "\n", "json", "report");

  Summary s;
  s["command"] = "report";
  s["case"] = ws.manifest().case_name;
  s["artifacts"] = count;
  s["refusals"] = refusals;
  s["skipped"] = skipped;
  s["index"] = "index.json";
  return s;
}

}  // namespace estmap::cli
