#include "sage/report_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace sage {

namespace fs = std::filesystem;

std::string report_to_json(const SageReport& report, const std::string& site) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["site"] = site;
    j["threshold_h"] = report.threshold_h;
    j["e_bar"] = report.e_bar;
    j["e_phi_bar"] = report.e_phi_bar;
    j["k"] = report.k;
    j["n"] = report.u_norm.size();
    j["m"] = report.v_norm.size();
    j["u_phi_params"] = {{"min", report.u_phi_params.min}, {"max", report.u_phi_params.max}};
    j["v_params"] = {{"min", report.v_params.min}, {"max", report.v_params.max}};
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& d : report.per_timestamp) {
        nlohmann::ordered_json row;
        row["date"] = d.date.to_string();
        row["u"] = d.u;
        row["u_phi"] = d.u_phi;
        row["significant"] = d.significant;
        row["matched_v"] = d.matched_v;
        row["matched_v_phi"] = d.matched_v_phi;
        row["hazy_term"] = d.hazy_term;
        row["dehazed_term"] = d.dehazed_term;
        rows.push_back(std::move(row));
    }
    j["per_timestamp"] = std::move(rows);
    return j.dump(2) + "\n";
}

namespace {

std::string joined(const std::vector<double>& values) {
    std::ostringstream os;
    os.precision(17);
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) os << ';';
        os << values[i];
    }
    return os.str();
}

}  // namespace

std::string report_per_timestamp_csv(const SageReport& report) {
    std::ostringstream os;
    os.precision(17);
    os << "date,u,u_phi,significant,hazy_term,dehazed_term,matched_v,matched_v_phi\n";
    for (const auto& d : report.per_timestamp) {
        os << d.date.to_string() << ',' << d.u << ',' << d.u_phi << ','
           << (d.significant ? 1 : 0) << ',' << d.hazy_term << ',' << d.dehazed_term << ','
           << joined(d.matched_v) << ',' << joined(d.matched_v_phi) << '\n';
    }
    return os.str();
}

std::string report_series_csv(const SageReport& report) {
    struct Row {
        std::string u_raw, u_norm, u_phi_raw, u_phi_norm, v_raw, v_norm, v_kind;
    };
    std::map<std::int32_t, Row> rows;
    const auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(17);
        os << v;
        return os.str();
    };
    for (size_t i = 0; i < report.u_raw.size(); ++i) {
        Row& r = rows[report.u_raw.entries[i].date.days];
        r.u_raw = fmt(report.u_raw.entries[i].value);
        r.u_norm = fmt(report.u_norm.entries[i].value);
        r.u_phi_raw = fmt(report.u_phi_raw.entries[i].value);
        r.u_phi_norm = fmt(report.u_phi_norm.entries[i].value);
    }
    for (size_t i = 0; i < report.v_raw.entries.size(); ++i) {
        Row& r = rows[report.v_raw.entries[i].date.days];
        r.v_raw = fmt(report.v_raw.entries[i].value);
        r.v_norm = fmt(report.v_norm[i]);
        r.v_kind = report.v_raw.entries[i].kind == ExtremumKind::peak ? "peak" : "trough";
    }
    std::ostringstream os;
    os << "date,u_raw,u_norm,u_phi_raw,u_phi_norm,v_raw,v_norm,v_kind\n";
    for (const auto& [days, r] : rows) {
        os << Date{days}.to_string() << ',' << r.u_raw << ',' << r.u_norm << ',' << r.u_phi_raw
           << ',' << r.u_phi_norm << ',' << r.v_raw << ',' << r.v_norm << ',' << r.v_kind << '\n';
    }
    return os.str();
}

void atomic_write(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.parent_path() / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        if (!out) throw IoError("short write to " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError("cannot rename " + tmp.string() + " to " + path.string());
}

void write_report_files(const SageReport& report, const std::string& site,
                        const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create output directory " + out_dir.string());
    atomic_write(out_dir / "report.json", report_to_json(report, site));
    atomic_write(out_dir / "per_timestamp.csv", report_per_timestamp_csv(report));
    atomic_write(out_dir / "series.csv", report_series_csv(report));
}

}  // namespace sage
