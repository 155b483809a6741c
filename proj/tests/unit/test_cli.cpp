#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "estmap/cli/commands.hpp"
#include "estmap/cli/manifest.hpp"
#include "estmap/harvest/mock_server.hpp"
#include "estmap/harvest/transport.hpp"
#include "estmap/overlay/basemap.hpp"
#include "estmap/records/store.hpp"
#include "estmap/util/error.hpp"
#include "estmap/util/io.hpp"
#include "estmap/util/text.hpp"
#include "support/tempdir.hpp"

using namespace estmap;
namespace fs = std::filesystem;

namespace {

const fs::path kCase = fs::path(ESTMAP_DATA_DIR) / "cases" / "rnai";

struct Run {
  int code = 0;
  std::string out;
  std::string err;

  std::vector<nlohmann::json> lines() const {
    std::vector<nlohmann::json> v;
    for (const auto& l : text::split(out, '\n')) {
      if (!l.empty()) v.push_back(nlohmann::json::parse(l));
    }
    return v;
  }
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Run r;
  r.code = cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

// Bundled case manifest with absolute paths and `overrides` appended per section.
std::string case_manifest(const fs::path& output, const std::string& extra_case = "",
                          const std::string& thresholds = "") {
  auto p = [](const char* rel) { return (kCase / rel).string(); };
  std::string m = "[case]\nname = rnai\nseed = 7\noutput = " + output.string() + "\nretrieved_on = 2026-01-15\n" +
                  extra_case;
  m += "[inputs]\nwos = " + p("wos.tsv") + "\nmedline = " + p("medline.txt") + "\nuspto = " + p("patents.jsonl") +
       "\nmesh_vocabulary = " + p("mesh_vocabulary.tsv") + "\n";
  m += "[queries]\nwos = TI=siRNA or TI=RNAi or TI=\"RNA interference\" or TI=\"interference RNA\"\n"
       "medline = TI=siRNA or TI=RNAi or TI=\"RNA interference\" or TI=\"interference RNA\"\n"
       "uspto = CLM=siRNA or CLM=RNAi or CLM=\"RNA interference\" or CLM=\"interference RNA\"\n";
  m += "[windows]\nfirst = 1998-2001\nanchor = 2002\nwidth = 5\nend = 2011\n";
  m += "[thresholds]\n" + thresholds;
  m += "[geo]\ngazetteer = " + (fs::path(ESTMAP_DATA_DIR) / "gazetteer.tsv").string() +
       "\naliases = " + (fs::path(ESTMAP_DATA_DIR) / "geo_aliases.tsv").string() + "\n";
  m += "[network]\naliases = " + p("org_aliases.tsv") + "\n";
  m += "[basemaps]\nwos_category = " + p("basemaps/wos_category.json") + "\njournal = " + p("basemaps/journal.json") +
       "\nmesh = " + p("basemaps/mesh.json") + "\nipc = " + p("basemaps/ipc.json") + "\n";
  return m;
}

fs::path write_manifest(const testing::TempDir& dir, const std::string& text) {
  auto path = dir / "manifest.ini";
  io::write_file_atomic(path, text);
  return path;
}

std::map<std::string, std::string> tree(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(root)) {
    if (e.is_regular_file()) files[fs::relative(e.path(), root).generic_string()] = io::read_file(e.path());
  }
  return files;
}

}  // namespace

TEST_CASE("bundled manifest loads with resolved paths and windows") {
  auto m = cli::load_manifest(kCase / "manifest.ini");
  CHECK(m.case_name == "rnai");
  CHECK(m.seed == 7);
  REQUIRE(m.queries.size() == 3);
  CHECK(m.queries[2].first == SourceDb::uspto);
  REQUIRE(m.windows.first_window);
  CHECK(m.windows.first_window->label() == "1998-2001");
  CHECK(m.windows.anchor_year == 2002);
  CHECK(m.top_share_patents == doctest::Approx(0.25));
  CHECK(m.basemaps.size() == 4);
  CHECK(fs::exists(*m.gazetteer));
  CHECK(m.output_dir.is_absolute());
}

TEST_CASE("manifest validation") {
  testing::TempDir dir("estmap-cli");
  SUBCASE("missing referenced file") {
    auto text = case_manifest(dir.path());
    text.replace(text.find("org_aliases.tsv"), 15, "no_such_file.tsv");
    CHECK_THROWS_AS(cli::load_manifest(write_manifest(dir, text)), InputError);
  }
  SUBCASE("threshold out of range") {
    auto path = write_manifest(dir, case_manifest(dir.path(), "", "top_share_patents = 1.5\n"));
    CHECK_THROWS_AS(cli::load_manifest(path), InputError);
  }
  SUBCASE("alpha out of range") {
    auto path = write_manifest(dir, case_manifest(dir.path(), "", "alpha = 0\n"));
    CHECK_THROWS_AS(cli::load_manifest(path), InputError);
  }
  SUBCASE("case name must be one path segment") {
    auto text = case_manifest(dir.path());
    text.replace(text.find("name = rnai"), 11, "name = a/b");
    CHECK_THROWS_AS(cli::load_manifest(write_manifest(dir, text)), InputError);
  }
  SUBCASE("no queries") {
    auto text = case_manifest(dir.path());
    auto from = text.find("[queries]");
    text.erase(from, text.find("[windows]") - from);
    CHECK_THROWS_AS(cli::load_manifest(write_manifest(dir, text)), InputError);
  }
  SUBCASE("syntax error carries a line number") {
    auto path = write_manifest(dir, "[case]\nname = x\n[broken\n");
    try {
      cli::load_manifest(path);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.location() == 3);
    }
  }
  SUBCASE("first window overlapping the regular sequence") {
    auto text = case_manifest(dir.path());
    text.replace(text.find("first = 1998-2001"), 17, "first = 1998-2003");
    auto ws_path = write_manifest(dir, text);
    auto r = run({"windows", "--manifest", ws_path.string()});
    CHECK(r.code == 2);
  }
}

TEST_CASE("exit codes") {
  testing::TempDir dir("estmap-cli");
  auto manifest = write_manifest(dir, case_manifest(dir / "out")).string();

  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"frobnicate"}).code == cli::kUsage);
  CHECK(run({"counts"}).code == cli::kUsage);
  CHECK(run({"geomap", "--manifest", manifest, "--format", "png"}).code == cli::kUsage);
  CHECK(run({"--help"}).code == cli::kOk);

  auto missing = run({"counts", "--manifest", (dir / "nope.ini").string()});
  CHECK(missing.code == cli::kInputError);
  CHECK(missing.err.find("manifest not found") != std::string::npos);

  auto bad_window = run({"geomap", "--manifest", manifest, "--db", "wos", "--window", "1990-1994"});
  CHECK(bad_window.code == cli::kInputError);

  auto refused = run({"geomap", "--manifest", manifest, "--db", "uspto", "--window", "1998-2001"});
  CHECK(refused.code == cli::kSampleTooSmall);
  CHECK(refused.err.find("sample too small") != std::string::npos);
  CHECK(refused.err.find("11 geocoded records") != std::string::npos);
  CHECK(refused.out.empty());

  auto ok = run({"geomap", "--manifest", manifest, "--db", "uspto", "--window", "2002-2006", "--format", "kml"});
  CHECK(ok.code == cli::kOk);
  CHECK(fs::exists(dir / "out/geo/excellence/uspto/2002-2006.kml"));
}

TEST_CASE("counts conserve the corpus size") {
  testing::TempDir dir("estmap-cli");
  auto manifest = write_manifest(dir, case_manifest(dir / "out")).string();
  auto r = run({"counts", "--manifest", manifest});
  REQUIRE(r.code == 0);
  auto lines = r.lines();
  REQUIRE(lines.size() == 3);
  for (const auto& l : lines) {
    long long sum = 0;
    for (const auto& [year, n] : l["years"].items()) sum += n.get<long long>();
    CHECK(sum == l["records"].get<long long>());
    CHECK(l["total"] == l["records"]);
  }
  CHECK(lines[2]["db"] == "uspto");
  CHECK(lines[2]["records"] == 57);
}

TEST_CASE("delineate writes corpora and emits dialect strings") {
  testing::TempDir dir("estmap-cli");
  auto manifest = write_manifest(dir, case_manifest(dir / "out")).string();
  auto r = run({"delineate", "--manifest", manifest, "--db", "wos"});
  REQUIRE(r.code == 0);
  auto corpus = nlohmann::json::parse(io::read_file(dir / "out/corpora/wos.json"));
  CHECK(corpus["record_ids"].size() == r.lines()[0]["records"].get<std::size_t>());
  CHECK(corpus["provenance"]["retrieved_on"] == "2026-01-15");

  auto e = run({"delineate", "--manifest", manifest, "--db", "uspto", "--emit", "--dialect", "uspto"});
  REQUIRE(e.code == 0);
  CHECK(e.lines()[0]["query"] == "ACLM/(siRNA or RNAi or \"RNA interference\" or \"interference RNA\")");

  auto bad = run({"delineate", "--manifest", manifest, "--db", "uspto", "--emit", "--dialect", "pubmed"});
  CHECK(bad.code == cli::kInputError);
}

TEST_CASE("ingest persists the store and reports skipped rows") {
  testing::TempDir dir("estmap-cli");
  auto manifest = write_manifest(dir, case_manifest(dir / "out")).string();
  auto r = run({"ingest", "--manifest", manifest});
  REQUIRE(r.code == 0);
  auto line = r.lines()[0];
  auto store = RecordStore::load(dir / "out/records.jsonl");
  CHECK(store.size() == line["records"].get<std::size_t>());
  CHECK(line["warnings"].size() >= 1);
  auto rec = store.find("wos:000100000");
  REQUIRE(rec);
  // Affiliations are geocoded on ingest.
  REQUIRE(!rec->affiliations.empty());
  CHECK(std::any_of(rec->affiliations.begin(), rec->affiliations.end(),
                    [](const Affiliation& a) { return a.geocode.has_value(); }));
}

TEST_CASE("report is deterministic and its index lists existing files") {
  testing::TempDir dir("estmap-cli");
  auto manifest = write_manifest(dir, case_manifest(dir / "unused")).string();
  auto a = run({"report", "--manifest", manifest, "--output", (dir / "a").string()});
  auto b = run({"report", "--manifest", manifest, "--output", (dir / "b").string()});
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.out == b.out);
  auto ta = tree(dir / "a");
  CHECK(ta == tree(dir / "b"));

  auto index = nlohmann::json::parse(ta.at("index.json"));
  std::set<std::string> listed;
  for (const auto& art : index["artifacts"]) listed.insert(art["path"].get<std::string>());
  for (const auto& path : listed) CHECK_MESSAGE(ta.count(path), path);
  for (const auto& [path, bytes] : ta) {
    if (path != "index.json") CHECK_MESSAGE(listed.count(path), path);
  }
  REQUIRE(index["refusals"].size() == 1);
  CHECK(index["refusals"][0]["window"] == "1998-2001");
  CHECK(index["refusals"][0]["db"] == "uspto");

  auto other_seed = run({"report", "--manifest", manifest, "--output", (dir / "c").string(), "--seed", "8"});
  REQUIRE(other_seed.code == 0);
  CHECK(tree(dir / "c").at("network/wos/org/2002-2006.graphml") != ta.at("network/wos/org/2002-2006.graphml"));
}

TEST_CASE("basemap-build from a matrix") {
  testing::TempDir dir("estmap-cli");
  io::write_file_atomic(dir / "m.tsv",
                        "code\tlabel\tA\tB\tC\tD\n"
                        "A\tAlpha\t4\t3\t0\t0\n"
                        "B\tBeta\t3\t5\t1\t0\n"
                        "C\tGamma\t0\t1\t6\t2\n"
                        "D\tDelta\t0\t0\t2\t3\n");
  auto out = dir / "bm/journal.json";
  auto r = run({"basemap-build", "--matrix", (dir / "m.tsv").string(), "--scheme", "journal", "--id", "toy", "--out",
                out.string()});
  REQUIRE(r.code == 0);
  auto map = overlay::load_basemap(out.string());
  CHECK(map.id == "toy");
  CHECK(map.nodes.size() == 4);
  CHECK(map.nodes[1].label == "Beta");
  CHECK(r.lines()[0]["edges"] == map.edges.size());

  io::write_file_atomic(dir / "bad.tsv", "code\tA\tB\nA\t1\nB\t0\t1\n");
  auto bad = run({"basemap-build", "--matrix", (dir / "bad.tsv").string(), "--scheme", "journal", "--out",
                  (dir / "x.json").string()});
  CHECK(bad.code == cli::kInputError);
  CHECK(bad.err.find("line 2") != std::string::npos);
}

TEST_CASE("harvest pulls a query's records into the store through the endpoint variable") {
  testing::TempDir dir("estmap-cli");
  // One MEDLINE entry per payload, taken from the bundled corpus.
  std::vector<harvest::MockServer::Entry> entries;
  auto text = io::read_file(kCase / "medline.txt");
  std::size_t pos = 0;
  while (entries.size() < 45) {
    auto next = text.find("\n\n", pos);
    auto entry = text.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    auto id = entry.substr(6, entry.find('\n') - 6);
    entries.push_back({id, entry + "\n"});
    if (next == std::string::npos) break;
    pos = next + 2;
  }
  harvest::MockServer server(entries);
  server.add_fault({"/esearch", {}, 1, 429, {}});
  server.start();

  auto manifest_text = case_manifest(dir / "out");
  manifest_text += "[harvest]\npage_size = 20\nrate_limit = 50\n";
  auto from = manifest_text.find("[inputs]");
  manifest_text.erase(from, manifest_text.find("[queries]") - from);
  auto manifest = write_manifest(dir, manifest_text).string();

  ::setenv(harvest::kEndpointEnv, server.base_url().c_str(), 1);
  auto r = run({"harvest", "--manifest", manifest, "--db", "medline"});
  ::unsetenv(harvest::kEndpointEnv);
  server.stop();

  REQUIRE_MESSAGE(r.code == 0, r.err);
  auto line = r.lines()[0];
  CHECK(line["ids"] == entries.size());
  CHECK(line["records"] == entries.size());
  CHECK(line["retries"].get<int>() >= 1);
  CHECK(line["query"] == "siRNA[Title] or RNAi[Title] or \"RNA interference\"[Title] or \"interference RNA\"[Title]");
  auto store = RecordStore::load(dir / "out/records.jsonl");
  CHECK(store.size() == entries.size());
  CHECK(fs::exists(dir / "out/harvest/medline.cursor.json"));

  // Without an endpoint or fixtures the command is an input error.
  auto none = run({"harvest", "--manifest", manifest, "--db", "medline"});
  CHECK(none.code == cli::kInputError);
}
