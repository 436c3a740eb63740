#include "sage/dataset.hpp"

#include <fstream>

#include <json.hpp>

#include "sage/config.hpp"
#include "sage/image_io.hpp"
#include "sage/manifest.hpp"
#include "sage/report_io.hpp"

namespace sage {

namespace fs = std::filesystem;
using nlohmann::json;

PhenologyScenario scenario_from_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario spec " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ValidationError("scenario spec " + path.string() + " is not valid JSON: " + e.what());
    }

    PhenologyScenario s;
    const auto req_date = [&](const json& node, const std::string& field) {
        if (!node.is_string()) throw ValidationError(field + ": required YYYY-MM-DD string");
        const auto d = parse_date(node.get<std::string>());
        if (!d) throw ValidationError(field + ": unparseable date");
        return *d;
    };
    if (!j.contains("season") || !j["season"].is_object())
        throw ValidationError("season: required object with start and end");
    s.season_start = req_date(j["season"]["start"], "season.start");
    s.season_end = req_date(j["season"]["end"], "season.end");
    s.seed = j.value("seed", 0ULL);
    s.base_ndvi = j.value("base_ndvi", 0.1);
    s.peak_ndvi = j.value("peak_ndvi", 0.9);
    s.ground_noise_sd = j.value("ground_noise_sd", 0.0);
    s.sensor_gain = j.value("sensor_gain", 1.0);
    s.sensor_bias = j.value("sensor_bias", 0.0);
    s.raster_size = j.value("raster_size", 16);
    s.ground_images_per_day = j.value("ground_images_per_day", 4);
    if (j.contains("cut_dates"))
        for (const auto& c : j["cut_dates"]) s.cut_dates.push_back(req_date(c, "cut_dates[]"));
    if (j.contains("haze_events")) {
        for (const auto& e : j["haze_events"]) {
            HazeEvent ev;
            ev.date = req_date(e.at("date"), "haze_events[].date");
            if (!e.contains("magnitude") || !e["magnitude"].is_number())
                throw ValidationError("haze_events[].magnitude: required number");
            ev.magnitude = e["magnitude"].get<double>();
            s.haze_events.push_back(ev);
        }
    }
    return s;
}

fs::path write_synthetic_dataset(const PhenologyScenario& scenario, const fs::path& out_dir) {
    const ScenarioData data = gen_scenario(scenario);

    std::error_code ec;
    fs::create_directories(out_dir / "satellite", ec);
    fs::create_directories(out_dir / "ground", ec);
    if (!fs::exists(out_dir / "satellite") || !fs::exists(out_dir / "ground"))
        throw IoError("cannot create dataset directories under " + out_dir.string());

    std::vector<ManifestEntry> ground_entries;
    for (const auto& rec : data.ground_records) {
        char hm[16];
        std::snprintf(hm, sizeof(hm), "%02d%02d", rec.timestamp.time.seconds / 3600,
                      (rec.timestamp.time.seconds / 60) % 60);
        const std::string stamp = rec.timestamp.date.to_string() + "_" + hm;
        const fs::path rgb = out_dir / "ground" / (stamp + "_rgb.png");
        const fs::path nir = out_dir / "ground" / (stamp + "_nir.png");
        save_raster_png16(rec.raster, rgb, nir);
        ground_entries.push_back({rec.timestamp, rgb, nir, SourceKind::ground});
    }

    std::vector<ManifestEntry> hazy_entries, dehazed_entries;
    for (size_t i = 0; i < data.satellite_hazy.entries.size(); ++i) {
        const Date d = data.satellite_hazy.entries[i].date;
        const Timestamp ts{d, TimeOfDay{0}};
        const fs::path hz_rgb = out_dir / "satellite" / ("hazy_" + d.to_string() + "_rgb.png");
        const fs::path hz_nir = out_dir / "satellite" / ("hazy_" + d.to_string() + "_nir.png");
        save_raster_png16(render_raster(data.satellite_hazy.entries[i].value, scenario.raster_size),
                          hz_rgb, hz_nir);
        hazy_entries.push_back({ts, hz_rgb, hz_nir, SourceKind::satellite});

        const fs::path dh_rgb = out_dir / "satellite" / ("dehazed_" + d.to_string() + "_rgb.png");
        const fs::path dh_nir = out_dir / "satellite" / ("dehazed_" + d.to_string() + "_nir.png");
        save_raster_png16(
            render_raster(data.satellite_clean.entries[i].value, scenario.raster_size), dh_rgb,
            dh_nir);
        dehazed_entries.push_back({ts, dh_rgb, dh_nir, SourceKind::satellite});
    }

    write_manifest(hazy_entries, out_dir / "satellite_hazy.csv");
    write_manifest(dehazed_entries, out_dir / "satellite_dehazed.csv");
    write_manifest(ground_entries, out_dir / "ground.csv");
    save_mask_png(PixelMask(scenario.raster_size, scenario.raster_size, true),
                  out_dir / "mask.png");

    nlohmann::ordered_json truth;
    truth["seed"] = scenario.seed;
    truth["hazed_indices"] = data.hazed_indices;
    nlohmann::ordered_json events = nlohmann::ordered_json::array();
    for (const auto& e : scenario.haze_events)
        events.push_back({{"date", e.date.to_string()}, {"magnitude", e.magnitude}});
    truth["haze_events"] = std::move(events);
    nlohmann::ordered_json clean = nlohmann::ordered_json::array();
    for (const auto& e : data.satellite_clean.entries)
        clean.push_back({{"date", e.date.to_string()}, {"value", e.value}});
    truth["satellite_clean"] = std::move(clean);
    nlohmann::ordered_json hazy = nlohmann::ordered_json::array();
    for (const auto& e : data.satellite_hazy.entries)
        hazy.push_back({{"date", e.date.to_string()}, {"value", e.value}});
    truth["satellite_hazy"] = std::move(hazy);
    atomic_write(out_dir / "truth.json", truth.dump(2) + "\n");

    RunConfig cfg;
    cfg.site = "synthetic";
    cfg.params.start = scenario.season_start;
    cfg.params.end = scenario.season_end;
    cfg.params.cloud_mode = CloudMode::none;
    cfg.satellite_manifest = out_dir / "satellite_hazy.csv";
    cfg.ground_manifest = out_dir / "ground.csv";
    cfg.ground_mask = out_dir / "mask.png";
    cfg.dehazer_mode = DehazerMode::external_rasters;
    cfg.dehazed_manifest = out_dir / "satellite_dehazed.csv";
    cfg.output_dir = out_dir / "out";
    const fs::path config_path = out_dir / "config.json";
    atomic_write(config_path, run_config_to_json(cfg, out_dir));
    return config_path;
}

}  // namespace sage
