#pragma once

#include <filesystem>
#include <string>

#include "sage/metric.hpp"

namespace sage {

/// JSON document with stable key order.
std::string report_to_json(const SageReport& report, const std::string& site);

/// One row per satellite timestamp; matched ground values are ';'-joined.
std::string report_per_timestamp_csv(const SageReport& report);

/// The three NDVI series aligned by date (blank cells where a series has no
/// entry): raw and normalized u and u_phi, plus the ground extrema v.
std::string report_series_csv(const SageReport& report);

/// Writes text to `path` atomically: temp file in the same directory, then
/// rename.
void atomic_write(const std::filesystem::path& path, const std::string& content);

/// Writes report.json, per_timestamp.csv and series.csv into out_dir.
void write_report_files(const SageReport& report, const std::string& site,
                        const std::filesystem::path& out_dir);

}  // namespace sage
