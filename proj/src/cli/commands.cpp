#include "estmap/cli/commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <memory>
#include <ostream>

#include <CLI11.hpp>

#include "estmap/cli/report.hpp"
#include "estmap/harvest/clock.hpp"
#include "estmap/harvest/harvester.hpp"
#include "estmap/harvest/transport.hpp"
#include "estmap/query/emit.hpp"
#include "estmap/query/parse.hpp"
#include "estmap/records/parse.hpp"
#include "estmap/util/error.hpp"

namespace estmap::cli {

namespace {

struct Common {
  std::string manifest;
  std::string window;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> formats;
  std::vector<std::string> dbs;
  std::string output;
};

const std::vector<std::string> kFormats = {"geojson", "kml", "graphml", "svg", "json"};

void add_common(CLI::App* cmd, Common& c, bool windowed, bool formatted) {
  cmd->add_option("--manifest", c.manifest, "Case manifest (INI)")->required();
  cmd->add_option("--seed", c.seed, "Override the manifest seed");
  cmd->add_option("--output", c.output, "Override the output directory");
  cmd->add_option("--db", c.dbs, "Source database (wos, medline, uspto); repeatable")
      ->check(CLI::IsMember({"wos", "medline", "uspto"}));
  if (windowed) cmd->add_option("--window", c.window, "Window label such as 1998-2001");
  if (formatted) cmd->add_option("--format", c.formats, "Output format; repeatable")->check(CLI::IsMember(kFormats));
}

Workspace open(const Common& c) {
  Workspace ws(load_manifest(c.manifest));
  if (c.seed) ws.set_seed(*c.seed);
  if (!c.output.empty()) ws.set_output_dir(c.output);
  return ws;
}

std::vector<SourceDb> selected_dbs(Workspace& ws, const Common& c) {
  if (c.dbs.empty()) return ws.databases();
  std::vector<SourceDb> out;
  for (const auto& d : c.dbs) out.push_back(source_db_from_string(d));
  return out;
}

std::vector<Window> selected_windows(Workspace& ws, const Common& c) {
  if (c.window.empty()) return ws.windows();
  return {ws.window(c.window)};
}

Formats formats_of(const Common& c) { return Formats(c.formats.begin(), c.formats.end()); }

query::Dialect native_dialect(SourceDb db) {
  switch (db) {
    case SourceDb::wos: return query::Dialect::wos;
    case SourceDb::medline: return query::Dialect::pubmed;
    case SourceDb::uspto: return query::Dialect::uspto;
  }
  return query::Dialect::canonical;
}

ParseResult parse_payload(SourceDb db, const std::string& bytes, const MeshVocabulary* vocabulary) {
  switch (db) {
    case SourceDb::medline: return parse_medline(bytes, vocabulary);
    case SourceDb::wos: return parse_wos_export(bytes);
    case SourceDb::uspto: return parse_patent_file(bytes);
  }
  return {};
}

Summary run_harvest(const Common& c, const std::string& cursor_file, const std::string& record_dir) {
  auto ws = open(c);
  const auto& m = ws.manifest();
  if (c.dbs.size() != 1) throw InputError("harvest needs exactly one --db");
  auto db = source_db_from_string(c.dbs.front());
  const auto* canonical = m.query_for(db);
  if (!canonical) throw InputError("manifest has no query for " + c.dbs.front());
  auto q = query::parse_query(*canonical, query::Dialect::canonical);

  harvest::HarvestJob job;
  job.query_text = query::emit_query(q, native_dialect(db));
  job.source_db = db;
  job.page_size = m.harvest.page_size;
  job.rate_limit = m.harvest.rate_limit;
  job.max_retries = m.harvest.max_retries;
  job.backoff.seed = ws.seed();
  job.cursor_file = cursor_file.empty() ? ws.output_dir() / "harvest" / (c.dbs.front() + ".cursor.json")
                                        : std::filesystem::path(cursor_file);

  std::unique_ptr<harvest::Transport> base;
  std::string endpoint = m.harvest.endpoint;
  if (const char* env = std::getenv(harvest::kEndpointEnv); env && *env) endpoint = env;
  if (!endpoint.empty()) {
    const char* key = std::getenv(harvest::kApiKeyEnv);
    base = std::make_unique<harvest::HttpTransport>(endpoint, std::chrono::milliseconds(m.harvest.timeout_ms),
                                                    key ? key : "");
  } else if (m.harvest.fixtures) {
    base = std::make_unique<harvest::FixtureTransport>(*m.harvest.fixtures);
  } else {
    throw InputError(std::string("no harvest endpoint: set ") + harvest::kEndpointEnv +
                     " or [harvest] endpoint/fixtures in the manifest");
  }
  std::unique_ptr<harvest::Transport> recorder;
  harvest::Transport* transport = base.get();
  if (!record_dir.empty()) {
    recorder = std::make_unique<harvest::RecordingTransport>(*base, record_dir);
    transport = recorder.get();
  }

  RecordStore store;
  if (std::filesystem::exists(m.store)) store = RecordStore::load(m.store);
  std::optional<MeshVocabulary> vocabulary;
  if (m.mesh_vocabulary) vocabulary = MeshVocabulary::load(m.mesh_vocabulary->string());

  harvest::SystemClock clock;
  harvest::Harvester harvester(job, *transport, clock);
  std::size_t ids = 0, records = 0;
  std::vector<std::string> warnings;
  harvester.run([&](const harvest::IdPage& page, const harvest::FetchResult& fetched) {
    ids += page.ids.size();
    warnings.insert(warnings.end(), fetched.warnings.begin(), fetched.warnings.end());
    std::vector<Record> batch;
    for (const auto& p : fetched.payloads) {
      auto parsed = parse_payload(db, p.bytes, vocabulary ? &*vocabulary : nullptr);
      for (auto& w : parsed.warnings) warnings.push_back(p.id + ": " + w);
      for (auto& r : parsed.records) batch.push_back(std::move(r));
    }
    if (ws.has_gazetteer()) geo::annotate(batch, ws.gazetteer());
    records += batch.size();
    store.upsert(std::move(batch));
    // Saved before the harvester advances its cursor, so a restart never skips a page.
    store.save(m.store);
  });

  Summary s;
  s["command"] = "harvest";
  s["db"] = c.dbs.front();
  s["query"] = job.query_text;
  s["ids"] = ids;
  s["records"] = records;
  s["store_size"] = store.size();
  s["requests"] = harvester.stats().requests;
  s["retries"] = harvester.stats().retries;
  s["warnings"] = warnings;
  return s;
}

void print(std::ostream& out, const Summary& s) { out << s.dump() << '\n'; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Emerging science and technology mapping toolkit", "estmap"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  Common c;
  std::function<int()> action;
  auto sub = [&](const char* name, const char* help, bool windowed, bool formatted) {
    auto* cmd = app.add_subcommand(name, help);
    add_common(cmd, c, windowed, formatted);
    return cmd;
  };

  sub("ingest", "Parse the manifest inputs into the record store", false, false);
  auto* harvest_cmd = sub("harvest", "Download records for one database from the harvest endpoint", false, false);
  std::string cursor_file, record_dir;
  harvest_cmd->add_option("--cursor-file", cursor_file, "Resume cursor (default under the output directory)");
  harvest_cmd->add_option("--record", record_dir, "Save every successful response as a replay fixture");

  auto* delineate_cmd = sub("delineate", "Select each database's corpus with its query", false, false);
  std::string dialect = "canonical";
  bool emit_only = false;
  delineate_cmd->add_option("--dialect", dialect, "Query dialect for --emit")
      ->check(CLI::IsMember({"canonical", "wos", "pubmed", "uspto"}));
  delineate_cmd->add_flag("--emit", emit_only, "Print the query in --dialect instead of delineating");

  sub("windows", "Partition the corpora into analysis windows", false, false);
  sub("counts", "Per-year record counts", false, false);
  sub("trends", "Compare the yearly counts of two databases", false, false);
  sub("geomap", "Top-cited excellence map per window", true, true);
  sub("collabmap", "City collaboration map per window", true, false);
  auto* net_cmd = sub("netreport", "Co-authorship network report and drawings", true, true);
  std::vector<std::string> levels;
  net_cmd->add_option("--level", levels, "city or org; repeatable")->check(CLI::IsMember({"city", "org"}));
  auto* overlay_cmd = sub("overlay", "Project window activity onto basemaps", true, true);
  auto* diversity_cmd = sub("diversity", "Rao-Stirling diversity per window", true, false);
  std::vector<std::string> schemes;
  for (auto* cmd : {overlay_cmd, diversity_cmd}) {
    cmd->add_option("--scheme", schemes, "Basemap scheme; repeatable")
        ->check(CLI::IsMember({"wos_category", "journal", "mesh", "ipc"}));
  }
  sub("report", "Run the whole pipeline and write index.json", false, false);

  auto* build_cmd = app.add_subcommand("basemap-build", "Build a basemap from a co-occurrence matrix");
  std::string matrix, scheme, id = "basemap", out_path;
  std::uint64_t build_seed = 1;
  double prune = 0.05;
  build_cmd->add_option("--matrix", matrix, "Square TSV matrix")->required();
  build_cmd->add_option("--scheme", scheme, "Code scheme")
      ->required()
      ->check(CLI::IsMember({"wos_category", "journal", "mesh", "ipc"}));
  build_cmd->add_option("--id", id, "Basemap id");
  build_cmd->add_option("--out", out_path, "Output JSON path")->required();
  build_cmd->add_option("--seed", build_seed, "Layout and clustering seed");
  build_cmd->add_option("--prune", prune, "Similarity below which edges are not drawn");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "estmap: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) err << "run 'estmap " << app.get_subcommands().front()->get_name() << " --help'\n";
    return kUsage;
  }

  const auto* chosen = app.get_subcommands().front();
  const std::string name = chosen->get_name();
  int code = kOk;
  try {
    if (name == "basemap-build") {
      print(out, step_basemap_build(matrix, code_scheme_from_string(scheme), id, build_seed, prune, out_path));
    } else if (name == "harvest") {
      print(out, run_harvest(c, cursor_file, record_dir));
    } else {
      auto ws = open(c);
      auto dbs = selected_dbs(ws, c);
      if (name == "ingest") {
        print(out, step_ingest(ws));
      } else if (name == "delineate") {
        for (auto db : dbs) {
          print(out, emit_only ? step_emit(ws, db, query::dialect_from_string(dialect)) : step_delineate(ws, db));
        }
      } else if (name == "windows") {
        print(out, step_windows(ws));
      } else if (name == "counts") {
        for (auto db : dbs) print(out, step_counts(ws, db));
      } else if (name == "trends") {
        if (dbs.size() != 2) throw InputError("trends compares exactly two databases (give --db twice)");
        print(out, step_trends(ws, dbs[0], dbs[1]));
      } else if (name == "geomap") {
        for (auto db : dbs) {
          for (const auto& w : selected_windows(ws, c)) {
            try {
              print(out, step_geomap(ws, db, w, formats_of(c)));
            } catch (const SampleTooSmall& e) {
              err << "estmap: geomap refused for " << to_string(db) << " " << w.label()
                  << ": sample too small for the statistical analysis (" << e.what() << ")\n";
              code = kSampleTooSmall;
            }
          }
        }
      } else if (name == "collabmap") {
        for (auto db : dbs) {
          for (const auto& w : selected_windows(ws, c)) print(out, step_collabmap(ws, db, w));
        }
      } else if (name == "netreport") {
        std::vector<std::string> lv = levels.empty() ? std::vector<std::string>{"city", "org"} : levels;
        for (auto db : dbs) {
          for (const auto& l : lv) {
            print(out, step_netreport(ws, db, network::level_from_string(l), selected_windows(ws, c),
                                      formats_of(c)));
          }
        }
      } else if (name == "overlay" || name == "diversity") {
        for (auto db : dbs) {
          for (auto s : schemes_for(db)) {
            const bool asked = std::find(schemes.begin(), schemes.end(), std::string(to_string(s))) != schemes.end();
            if (schemes.empty() ? !ws.has_basemap(s) : !asked) continue;
            print(out, name == "overlay" ? step_overlay(ws, db, s, selected_windows(ws, c), formats_of(c))
                                         : step_diversity(ws, db, s, selected_windows(ws, c)));
          }
        }
      } else if (name == "report") {
        auto summary = run_report(ws, [&](const Summary& s) { print(out, s); });
        print(out, summary);
      }
    }
  } catch (const SampleTooSmall& e) {
    err << "estmap: sample too small for the statistical analysis: " << e.what() << "\n";
    return kSampleTooSmall;
  } catch (const Error& e) {
    err << "estmap: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "estmap: malformed JSON input: " << e.what() << "\n";
    return kInputError;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "estmap: " << e.what() << "\n";
    return kInputError;
  }
  return code;
}

}  // namespace estmap::cli
