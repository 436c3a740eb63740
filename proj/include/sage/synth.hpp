#pragma once

#include <cstdint>
#include <vector>

#include "sage/dates.hpp"
#include "sage/ingest.hpp"
#include "sage/raster.hpp"
#include "sage/series.hpp"

namespace sage {

struct HazeEvent {
    Date date;
    double magnitude = 0.0;  // subtracted from the clean satellite NDVI
};

/// Fully controlled synthetic scenario: a cut-and-regrow phenology signal
/// observed by a ground camera (daily, noisy) and a satellite (every 8 days,
/// through an affine sensor offset), with haze injected at known dates.
struct PhenologyScenario {
    std::uint64_t seed = 0;
    Date season_start{};
    Date season_end{};  // exclusive
    std::vector<Date> cut_dates;
    double base_ndvi = 0.1;
    double peak_ndvi = 0.9;
    double ground_noise_sd = 0.0;
    std::vector<HazeEvent> haze_events;
    double sensor_gain = 1.0;
    double sensor_bias = 0.0;
    int raster_size = 16;
    int ground_images_per_day = 4;  // spread over the 11:00-13:00 window
};

struct ScenarioData {
    std::vector<ObservationRecord> ground_records;  // rendered rasters, sorted
    NdviSeries ground_daily_signal;                 // noiseless daily signal
    NdviSeries satellite_clean;                     // 8-day samples through the sensor map
    NdviSeries satellite_hazy;                      // clean minus magnitudes at hazed indices
    std::vector<int> hazed_indices;                 // truth ledger, indices into the 8-day series
};

/// Noiseless phenology value at a date: rises linearly from base to peak over
/// each segment between cuts (and the season edges), dropping back to base at
/// every cut date.
double phenology_value(const PhenologyScenario& scenario, Date d);

/// Deterministic generation under a fixed seed. Haze events are snapped to the
/// 8-day sampling date of the window containing them. Throws on cut dates
/// outside the season.
ScenarioData gen_scenario(const PhenologyScenario& scenario);

/// Uniform reflectance raster whose mean NDVI equals `series_value` exactly:
/// nir = (1+v)/2, red = (1-v)/2; green and blue mirror red so RGB consumers
/// work.
Raster render_raster(double series_value, int size);

}  // namespace sage
