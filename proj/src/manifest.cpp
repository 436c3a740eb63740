#include "sage/manifest.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace sage {

namespace fs = std::filesystem;

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    return cells;
}

std::string normalize_header(std::string h) {
    std::replace(h.begin(), h.end(), '-', '_');
    std::transform(h.begin(), h.end(), h.begin(), ::tolower);
    // Trim whitespace and a possible UTF-8 BOM.
    while (!h.empty() && (h.front() == ' ' || h.front() == '\xef' || h.front() == '\xbb' ||
                          h.front() == '\xbf'))
        h.erase(h.begin());
    while (!h.empty() && (h.back() == ' ' || h.back() == '\r')) h.pop_back();
    return h;
}

std::string trim(std::string s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.pop_back();
    while (!s.empty() && s.front() == ' ') s.erase(s.begin());
    return s;
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());
    const fs::path base = path.parent_path();

    std::string line;
    if (!std::getline(in, line)) throw ValidationError("manifest is empty: " + path.string());
    const auto headers = split_csv_line(line);
    int col_ts = -1, col_file = -1, col_nir = -1, col_source = -1;
    for (size_t i = 0; i < headers.size(); ++i) {
        const std::string h = normalize_header(headers[i]);
        if (h == "timestamp") col_ts = static_cast<int>(i);
        else if (h == "file_path") col_file = static_cast<int>(i);
        else if (h == "nir_file_path") col_nir = static_cast<int>(i);
        else if (h == "source") col_source = static_cast<int>(i);
    }
    if (col_ts < 0 || col_file < 0 || col_source < 0)
        throw ValidationError("manifest " + path.string() +
                              " must have columns timestamp, file-path, source");

    std::vector<ManifestEntry> out;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        const auto cell = [&](int col) -> std::string {
            return col >= 0 && col < static_cast<int>(cells.size()) ? trim(cells[col]) : "";
        };
        ManifestEntry e;
        const auto ts = parse_timestamp(cell(col_ts));
        if (!ts)
            throw ValidationError("manifest " + path.string() + " line " +
                                  std::to_string(line_no) + ": bad timestamp '" + cell(col_ts) +
                                  "'");
        e.timestamp = *ts;
        if (cell(col_file).empty())
            throw ValidationError("manifest " + path.string() + " line " +
                                  std::to_string(line_no) + ": missing file-path");
        e.file = base / cell(col_file);
        const std::string nir = cell(col_nir);
        if (!nir.empty()) e.nir_file = base / nir;
        const std::string src = cell(col_source);
        if (src == "satellite") e.source = SourceKind::satellite;
        else if (src == "ground") e.source = SourceKind::ground;
        else
            throw ValidationError("manifest " + path.string() + " line " +
                                  std::to_string(line_no) + ": source must be satellite|ground");
        out.push_back(std::move(e));
    }
    std::sort(out.begin(), out.end(),
              [](const ManifestEntry& a, const ManifestEntry& b) { return a.timestamp < b.timestamp; });
    return out;
}

std::vector<ObservationRecord> load_records(const fs::path& manifest_path,
                                            const LoadOptions& options) {
    std::vector<ObservationRecord> out;
    for (const auto& e : parse_manifest(manifest_path)) {
        ObservationRecord r;
        r.timestamp = e.timestamp;
        r.source = e.source;
        r.raster = e.nir_file ? load_rgb_nir(e.file, *e.nir_file, options)
                              : load_raster(e.file, options);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<SatelliteInput> load_satellite_inputs(const fs::path& manifest_path,
                                                  const LoadOptions& options) {
    std::vector<SatelliteInput> out;
    for (const auto& e : parse_manifest(manifest_path)) {
        SatelliteInput input;
        input.record.timestamp = e.timestamp;
        input.record.source = e.source;
        input.record.raster = e.nir_file ? load_rgb_nir(e.file, *e.nir_file, options)
                                         : load_raster(e.file, options);
        const fs::path sidecar = cloud_sidecar_path(e.file);
        if (fs::exists(sidecar)) {
            PixelMask m = load_mask(sidecar);
            if (!m.same_shape(input.record.raster.width, input.record.raster.height))
                throw DimensionMismatchError("cloud sidecar " + sidecar.string() +
                                             " does not match its raster");
            input.cloud = std::move(m);
        }
        out.push_back(std::move(input));
    }
    return out;
}

void write_manifest(const std::vector<ManifestEntry>& entries, const fs::path& path) {
    std::ofstream outf(path);
    if (!outf) throw IoError("cannot write manifest " + path.string());
    outf << "timestamp,file-path,nir-file-path,source\n";
    const fs::path base = path.parent_path();
    for (const auto& e : entries) {
        outf << e.timestamp.to_string() << ',' << fs::relative(e.file, base).generic_string()
             << ',';
        if (e.nir_file) outf << fs::relative(*e.nir_file, base).generic_string();
        outf << ',' << (e.source == SourceKind::satellite ? "satellite" : "ground") << '\n';
    }
}

std::string series_to_csv(const NdviSeries& series) {
    std::ostringstream os;
    os.precision(17);
    os << "date,value\n";
    for (const auto& e : series.entries) os << e.date.to_string() << ',' << e.value << '\n';
    return os.str();
}

NdviSeries series_from_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw ValidationError("series CSV is empty");
    NdviSeries out;
    while (std::getline(is, line)) {
        if (trim(line).empty()) continue;
        const auto cells = split_csv_line(line);
        if (cells.size() < 2) throw ValidationError("series CSV row needs date,value");
        const auto d = parse_date(trim(cells[0]));
        if (!d) throw ValidationError("series CSV: bad date '" + cells[0] + "'");
        out.entries.push_back({*d, std::stod(cells[1])});
    }
    return out;
}

std::string extrema_to_csv(const ExtremaSeries& series) {
    std::ostringstream os;
    os.precision(17);
    os << "date,value,kind\n";
    for (const auto& e : series.entries)
        os << e.date.to_string() << ',' << e.value << ','
           << (e.kind == ExtremumKind::peak ? "peak" : "trough") << '\n';
    return os.str();
}

}  // namespace sage
