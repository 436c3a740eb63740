#include "sage/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sage {

namespace {

void validate(const PhenologyScenario& s) {
    if (!(s.season_start < s.season_end)) throw ValidationError("season start must precede end");
    if (!(s.base_ndvi < s.peak_ndvi)) throw ValidationError("base_ndvi must be below peak_ndvi");
    if (s.base_ndvi < -1.0 || s.peak_ndvi > 1.0)
        throw ValidationError("base/peak NDVI must lie in [-1, 1]");
    if (s.ground_noise_sd < 0.0) throw ValidationError("ground_noise_sd must be >= 0");
    if (s.raster_size < 1) throw ValidationError("raster_size must be >= 1");
    if (s.ground_images_per_day < 1) throw ValidationError("ground_images_per_day must be >= 1");
    for (const Date& c : s.cut_dates)
        if (c < s.season_start || !(c < s.season_end))
            throw ValidationError("cut date " + c.to_string() + " lies outside the season");
    for (const auto& e : s.haze_events) {
        if (e.date < s.season_start || !(e.date < s.season_end))
            throw ValidationError("haze event date " + e.date.to_string() +
                                  " lies outside the season");
        if (e.magnitude <= 0.0) throw ValidationError("haze magnitude must be > 0");
    }
}

}  // namespace

double phenology_value(const PhenologyScenario& s, Date d) {
    // Segment boundaries: season start, sorted cut dates, season end.
    std::vector<Date> bounds;
    bounds.push_back(s.season_start);
    std::vector<Date> cuts = s.cut_dates;
    std::sort(cuts.begin(), cuts.end(), [](Date a, Date b) { return a < b; });
    for (const Date& c : cuts) bounds.push_back(c);
    bounds.push_back(s.season_end);

    for (size_t i = 0; i + 1 < bounds.size(); ++i) {
        if (d >= bounds[i] && d < bounds[i + 1]) {
            const int len = bounds[i + 1] - bounds[i];
            const double frac = len > 0 ? static_cast<double>(d - bounds[i]) / len : 0.0;
            return s.base_ndvi + (s.peak_ndvi - s.base_ndvi) * frac;
        }
    }
    return s.base_ndvi;
}

Raster render_raster(double series_value, int size) {
    if (series_value < -1.0 || series_value > 1.0)
        throw ValidationError("render_raster value must lie in [-1, 1]");
    const double nir = (1.0 + series_value) / 2.0;
    const double red = (1.0 - series_value) / 2.0;
    return make_uniform_raster(size, size,
                               {{"red", red}, {"green", red}, {"blue", red}, {"nir", nir}},
                               Scale::reflectance);
}

ScenarioData gen_scenario(const PhenologyScenario& s) {
    validate(s);
    std::mt19937_64 rng(s.seed);
    std::normal_distribution<double> noise(0.0, 1.0);

    ScenarioData out;

    // Ground: per-day signal plus per-record Gaussian noise, a few records in
    // the late-morning window of each day.
    for (Date d = s.season_start; d < s.season_end; d = d + 1) {
        const double signal = phenology_value(s, d);
        out.ground_daily_signal.entries.push_back({d, signal});
        for (int k = 0; k < s.ground_images_per_day; ++k) {
            double v = signal + (s.ground_noise_sd > 0.0 ? s.ground_noise_sd * noise(rng) : 0.0);
            v = std::clamp(v, -1.0, 1.0);
            ObservationRecord rec;
            rec.timestamp = Timestamp{d, TimeOfDay{11 * 3600 + k * 30 * 60}};
            rec.raster = render_raster(v, s.raster_size);
            rec.source = SourceKind::ground;
            out.ground_records.push_back(std::move(rec));
        }
    }

    // Satellite: sample the noiseless signal through the affine sensor map
    // every 8 days.
    for (Date d = s.season_start; d < s.season_end; d = d + 8) {
        const double v = std::clamp(s.sensor_gain * phenology_value(s, d) + s.sensor_bias, -1.0, 1.0);
        out.satellite_clean.entries.push_back({d, v});
    }

    out.satellite_hazy = out.satellite_clean;
    for (const auto& e : s.haze_events) {
        const int idx = (e.date - s.season_start) / 8;  // snap to the containing window
        double& v = out.satellite_hazy.entries[idx].value;
        v = std::clamp(v - e.magnitude, -1.0, 1.0);
        out.hazed_indices.push_back(idx);
    }
    std::sort(out.hazed_indices.begin(), out.hazed_indices.end());
    out.hazed_indices.erase(std::unique(out.hazed_indices.begin(), out.hazed_indices.end()),
                            out.hazed_indices.end());
    return out;
}

}  // namespace sage
