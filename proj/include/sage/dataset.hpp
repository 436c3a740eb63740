#pragma once

#include <filesystem>

#include "sage/synth.hpp"

namespace sage {

/// Parses a scenario spec file (JSON, same dialect as run configs).
PhenologyScenario scenario_from_file(const std::filesystem::path& path);

/// Renders a scenario to disk: hazy and dehazed (clean-restoring) satellite
/// rasters, ground rasters, manifests in the ingestion CSV format, an all-true
/// refined mask, a truth ledger and a ready-to-run config.json. Returns the
/// config path. Deterministic: the same spec produces byte-identical output.
std::filesystem::path write_synthetic_dataset(const PhenologyScenario& scenario,
                                              const std::filesystem::path& out_dir);

}  // namespace sage
