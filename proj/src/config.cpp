#include "sage/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sage {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

class Diagnostics {
  public:
    void add(const std::string& field, const std::string& problem) {
        messages_.push_back(field + ": " + problem);
    }
    void raise_if_any(const fs::path& path) const {
        if (messages_.empty()) return;
        std::ostringstream os;
        os << "invalid config " << path.string() << ":";
        for (const auto& m : messages_) os << "\n  - " << m;
        throw ValidationError(os.str());
    }

  private:
    std::vector<std::string> messages_;
};

}  // namespace

RunConfig parse_run_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("config " + path.string() + " is not valid JSON: " + e.what());
    }

    Diagnostics diag;
    const fs::path base = path.parent_path();
    RunConfig cfg;

    const std::set<std::string> known = {"schema_version", "site",          "dates",
                                         "composite",      "cloud",         "smoothing",
                                         "peaks",          "ground_window", "threshold_h",
                                         "inputs",         "dehazer",       "output_dir"};
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!known.count(key)) diag.add(key, "unknown field");
    }

    if (!j.contains("schema_version") || !j["schema_version"].is_number_integer())
        diag.add("schema_version", "required integer");
    else if (j["schema_version"].get<int>() != kConfigSchemaVersion)
        diag.add("schema_version", "unsupported version " + j["schema_version"].dump() +
                                       " (expected " + std::to_string(kConfigSchemaVersion) + ")");

    cfg.site = j.value("site", std::string("unnamed-site"));

    if (!j.contains("dates") || !j["dates"].is_object()) {
        diag.add("dates", "required object with start and end");
    } else {
        const auto parse_cfg_date = [&](const char* key) -> std::optional<Date> {
            if (!j["dates"].contains(key) || !j["dates"][key].is_string()) {
                diag.add(std::string("dates.") + key, "required YYYY-MM-DD string");
                return std::nullopt;
            }
            const auto d = parse_date(j["dates"][key].get<std::string>());
            if (!d) diag.add(std::string("dates.") + key, "unparseable date");
            return d;
        };
        const auto s = parse_cfg_date("start");
        const auto e = parse_cfg_date("end");
        if (s) cfg.params.start = *s;
        if (e) cfg.params.end = *e;
        if (s && e && !(*s < *e)) diag.add("dates", "start must precede end");
    }

    if (j.contains("composite")) {
        const auto& c = j["composite"];
        const std::string rule = c.value("rule", std::string("most-recent-valid"));
        if (rule == "most-recent-valid")
            cfg.params.composite_rule = CompositeRule::most_recent_valid;
        else if (rule == "per-pixel-median")
            cfg.params.composite_rule = CompositeRule::per_pixel_median;
        else
            diag.add("composite.rule", "must be most-recent-valid or per-pixel-median");
        cfg.params.composite_window_days = c.value("window_days", 8);
        if (cfg.params.composite_window_days < 1)
            diag.add("composite.window_days", "must be >= 1");
    }

    if (j.contains("cloud")) {
        const auto& c = j["cloud"];
        const std::string mode = c.value("mode", std::string("external"));
        if (mode == "external") cfg.params.cloud_mode = CloudMode::external;
        else if (mode == "builtin") cfg.params.cloud_mode = CloudMode::builtin;
        else if (mode == "none") cfg.params.cloud_mode = CloudMode::none;
        else diag.add("cloud.mode", "must be external, builtin or none");
        cfg.params.cloud_brightness_threshold = c.value("brightness_threshold", 0.6);
        if (cfg.params.cloud_brightness_threshold < 0.0 ||
            cfg.params.cloud_brightness_threshold > 1.0)
            diag.add("cloud.brightness_threshold", "must lie in [0, 1]");
    }

    if (j.contains("smoothing")) {
        cfg.params.smooth_half_width = j["smoothing"].value("half_width", 3);
        if (cfg.params.smooth_half_width < 0) diag.add("smoothing.half_width", "must be >= 0");
    }

    if (j.contains("peaks")) {
        const auto& p = j["peaks"];
        cfg.params.peak_min_prominence = p.value("min_prominence", 0.05);
        if (cfg.params.peak_min_prominence <= 0.0)
            diag.add("peaks.min_prominence", "must be > 0");
        cfg.params.peak_min_separation_days = p.value("min_separation_days", 20);
        if (cfg.params.peak_min_separation_days < 0)
            diag.add("peaks.min_separation_days", "must be >= 0");
    }

    if (j.contains("ground_window")) {
        const auto& w = j["ground_window"];
        const auto parse_cfg_time = [&](const char* key, TimeOfDay fallback) {
            if (!w.contains(key)) return fallback;
            if (!w[key].is_string()) {
                diag.add(std::string("ground_window.") + key, "must be an HH:MM string");
                return fallback;
            }
            const auto t = parse_time_of_day(w[key].get<std::string>());
            if (!t) {
                diag.add(std::string("ground_window.") + key, "unparseable time of day");
                return fallback;
            }
            return *t;
        };
        cfg.params.ground_window_start = parse_cfg_time("start", cfg.params.ground_window_start);
        cfg.params.ground_window_end = parse_cfg_time("end", cfg.params.ground_window_end);
        if (!(cfg.params.ground_window_start < cfg.params.ground_window_end))
            diag.add("ground_window", "start must precede end");
    }

    cfg.params.threshold_h = j.value("threshold_h", 0.1);
    if (cfg.params.threshold_h <= 0.0) diag.add("threshold_h", "must be > 0");

    const auto resolve = [&](const std::string& rel) { return base / rel; };
    const auto require_path = [&](const json& node, const char* key, const std::string& field,
                                  bool must_exist) -> std::optional<fs::path> {
        if (!node.contains(key) || node[key].is_null()) return std::nullopt;
        if (!node[key].is_string()) {
            diag.add(field, "must be a path string");
            return std::nullopt;
        }
        fs::path p = resolve(node[key].get<std::string>());
        if (must_exist && !fs::exists(p)) {
            diag.add(field, "path does not exist: " + p.string());
            return std::nullopt;
        }
        return p;
    };

    if (!j.contains("inputs") || !j["inputs"].is_object()) {
        diag.add("inputs", "required object");
    } else {
        const auto& inp = j["inputs"];
        const auto required_path = [&](const char* key, const std::string& field,
                                       fs::path& target) {
            if (!inp.contains(key) || inp[key].is_null()) {
                diag.add(field, "required");
                return;
            }
            if (const auto p = require_path(inp, key, field, true)) target = *p;
        };
        required_path("satellite_manifest", "inputs.satellite_manifest", cfg.satellite_manifest);
        required_path("ground_manifest", "inputs.ground_manifest", cfg.ground_manifest);
        required_path("ground_mask", "inputs.ground_mask", cfg.ground_mask);
        cfg.satellite_roi_mask = require_path(inp, "satellite_roi_mask", "inputs.satellite_roi_mask", true);

        const std::string scale = inp.value("satellite_float_scale", std::string("reflectance"));
        if (scale == "reflectance") cfg.load_options.float_scale = Scale::reflectance;
        else if (scale == "8bit") cfg.load_options.float_scale = Scale::eight_bit;
        else diag.add("inputs.satellite_float_scale", "must be reflectance or 8bit");

        if (inp.contains("nodata_value") && !inp["nodata_value"].is_null()) {
            if (!inp["nodata_value"].is_number())
                diag.add("inputs.nodata_value", "must be a number or null");
            else
                cfg.load_options.nodata_value = inp["nodata_value"].get<double>();
        }
        if (inp.contains("band_order") && !inp["band_order"].is_null()) {
            if (!inp["band_order"].is_array())
                diag.add("inputs.band_order", "must be an array of band names");
            else
                for (const auto& b : inp["band_order"])
                    cfg.load_options.band_order.push_back(b.get<std::string>());
        }
    }

    if (!j.contains("dehazer") || !j["dehazer"].is_object()) {
        diag.add("dehazer", "required object with mode");
    } else {
        const std::string mode = j["dehazer"].value("mode", std::string(""));
        if (mode == "external-rasters") {
            cfg.dehazer_mode = DehazerMode::external_rasters;
            if (!j["dehazer"].contains("manifest") || j["dehazer"]["manifest"].is_null())
                diag.add("dehazer.manifest", "required for mode external-rasters");
            else if (const auto p = require_path(j["dehazer"], "manifest", "dehazer.manifest", true))
                cfg.dehazed_manifest = *p;
        } else if (mode == "identity") {
            cfg.dehazer_mode = DehazerMode::identity;
        } else {
            diag.add("dehazer.mode", "must be external-rasters or identity");
        }
    }

    if (j.contains("output_dir")) {
        if (!j["output_dir"].is_string()) diag.add("output_dir", "must be a path string");
        else cfg.output_dir = resolve(j["output_dir"].get<std::string>());
    } else {
        cfg.output_dir = base / "out";
    }

    diag.raise_if_any(path);
    return cfg;
}

std::string run_config_to_json(const RunConfig& cfg, const fs::path& base_dir) {
    const auto rel = [&](const fs::path& p) { return fs::relative(p, base_dir).generic_string(); };
    nlohmann::ordered_json j;
    j["schema_version"] = kConfigSchemaVersion;
    j["site"] = cfg.site;
    j["dates"] = {{"start", cfg.params.start.to_string()}, {"end", cfg.params.end.to_string()}};
    j["composite"] = {
        {"rule", cfg.params.composite_rule == CompositeRule::most_recent_valid
                     ? "most-recent-valid"
                     : "per-pixel-median"},
        {"window_days", cfg.params.composite_window_days}};
    j["cloud"] = {{"mode", cfg.params.cloud_mode == CloudMode::external  ? "external"
                           : cfg.params.cloud_mode == CloudMode::builtin ? "builtin"
                                                                         : "none"},
                  {"brightness_threshold", cfg.params.cloud_brightness_threshold}};
    j["smoothing"] = {{"half_width", cfg.params.smooth_half_width}};
    j["peaks"] = {{"min_prominence", cfg.params.peak_min_prominence},
                  {"min_separation_days", cfg.params.peak_min_separation_days}};
    j["ground_window"] = {{"start", cfg.params.ground_window_start.to_string()},
                          {"end", cfg.params.ground_window_end.to_string()}};
    j["threshold_h"] = cfg.params.threshold_h;
    nlohmann::ordered_json inputs;
    inputs["satellite_manifest"] = rel(cfg.satellite_manifest);
    inputs["ground_manifest"] = rel(cfg.ground_manifest);
    inputs["ground_mask"] = rel(cfg.ground_mask);
    if (cfg.satellite_roi_mask) inputs["satellite_roi_mask"] = rel(*cfg.satellite_roi_mask);
    j["inputs"] = inputs;
    if (cfg.dehazer_mode == DehazerMode::external_rasters)
        j["dehazer"] = {{"mode", "external-rasters"}, {"manifest", rel(*cfg.dehazed_manifest)}};
    else
        j["dehazer"] = {{"mode", "identity"}};
    j["output_dir"] = rel(cfg.output_dir);
    return j.dump(2) + "\n";
}

}  // namespace sage
