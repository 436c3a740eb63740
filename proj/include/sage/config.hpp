#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "sage/image_io.hpp"
#include "sage/metric.hpp"

namespace sage {

/// One evaluation run, loadable from a versioned JSON config file. Paths are
/// resolved relative to the config file's directory so runs stay archivable.
struct RunConfig {
    std::string site;
    EvalParams params;

    std::filesystem::path satellite_manifest;
    std::filesystem::path ground_manifest;
    std::filesystem::path ground_mask;
    std::optional<std::filesystem::path> satellite_roi_mask;
    LoadOptions load_options;

    DehazerMode dehazer_mode = DehazerMode::external_rasters;
    std::optional<std::filesystem::path> dehazed_manifest;

    std::filesystem::path output_dir = "out";
};

inline constexpr int kConfigSchemaVersion = 1;

/// Parses and validates a run config. Validation is total: every invalid
/// field is reported by name in one ValidationError, and referenced input
/// paths must exist.
RunConfig parse_run_config(const std::filesystem::path& path);

/// Serializes a config back to JSON text (used by the synthetic dataset
/// writer to emit ready-to-run configs).
std::string run_config_to_json(const RunConfig& config, const std::filesystem::path& base_dir);

}  // namespace sage
