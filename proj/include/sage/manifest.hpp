#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sage/image_io.hpp"
#include "sage/ingest.hpp"
#include "sage/metric.hpp"

namespace sage {

/// One row of a manifest CSV: timestamp, file-path, nir-file-path (ground
/// only), source. Paths are resolved relative to the manifest's directory.
struct ManifestEntry {
    Timestamp timestamp;
    std::filesystem::path file;
    std::optional<std::filesystem::path> nir_file;
    SourceKind source = SourceKind::satellite;
};

std::vector<ManifestEntry> parse_manifest(const std::filesystem::path& path);

/// Loads every entry of a manifest into records, sorted by timestamp.
/// Entries with a nir-file-path load as merged RGB+NIR rasters.
std::vector<ObservationRecord> load_records(const std::filesystem::path& manifest_path,
                                            const LoadOptions& options = {});

/// Loads a satellite manifest plus any ".cloud.png" sidecar masks.
std::vector<SatelliteInput> load_satellite_inputs(const std::filesystem::path& manifest_path,
                                                  const LoadOptions& options = {});

void write_manifest(const std::vector<ManifestEntry>& entries,
                    const std::filesystem::path& path);

/// CSV with header "date,value".
std::string series_to_csv(const NdviSeries& series);
NdviSeries series_from_csv(const std::string& text);

/// CSV with header "date,value,kind".
std::string extrema_to_csv(const ExtremaSeries& series);

}  // namespace sage
