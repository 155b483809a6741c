#pragma once

#include "estmap/cli/steps.hpp"

namespace estmap::cli {

/// Full pipeline over every database and window: delineation, windows,
/// counts, trends, excellence and collaboration maps, network reports,
/// overlays and diversity. Statistical refusals are recorded in the index
/// instead of aborting. Writes `index.json` listing every artifact.
/// `emit` receives each step's summary as it completes.
Summary run_report(Workspace& ws, const std::function<void(const Summary&)>& emit = {});

}  // namespace estmap::cli
