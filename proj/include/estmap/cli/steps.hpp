#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "estmap/cli/workspace.hpp"
#include "estmap/network/graph.hpp"
#include "estmap/query/ast.hpp"

namespace estmap::cli {

/// One line of standard-output summary.
using Summary = nlohmann::ordered_json;

/// Output formats requested with --format; empty means the step's default.
using Formats = std::set<std::string>;

Summary step_ingest(Workspace& ws);
Summary step_delineate(Workspace& ws, SourceDb db);
Summary step_emit(Workspace& ws, SourceDb db, query::Dialect dialect);
Summary step_windows(Workspace& ws);
Summary step_counts(Workspace& ws, SourceDb db);
Summary step_trends(Workspace& ws, SourceDb a, SourceDb b);

/// Throws SampleTooSmall when the window holds too few geocoded records.
Summary step_geomap(Workspace& ws, SourceDb db, const Window& window, const Formats& formats);
Summary step_collabmap(Workspace& ws, SourceDb db, const Window& window);

/// Graph files per window plus the component table over the same windows.
Summary step_netreport(Workspace& ws, SourceDb db, network::Level level, const std::vector<Window>& windows,
                       const Formats& formats);

/// One frame per window on the scheme's basemap, numbered in window order.
Summary step_overlay(Workspace& ws, SourceDb db, CodeScheme scheme, const std::vector<Window>& windows,
                     const Formats& formats);
Summary step_diversity(Workspace& ws, SourceDb db, CodeScheme scheme, const std::vector<Window>& windows);

/// Reads a square similarity or co-occurrence matrix (TSV, header row of
/// codes, first column code, optional second column label when the header
/// names it "label") and writes a basemap JSON file.
Summary step_basemap_build(const std::filesystem::path& matrix, CodeScheme scheme, const std::string& id,
                           std::uint64_t seed, double prune_threshold, const std::filesystem::path& out);

}  // namespace estmap::cli
