#include "sage/pipeline.hpp"

#include "sage/manifest.hpp"

namespace sage {

SageReport evaluate(const RunConfig& config) {
    const std::vector<SatelliteInput> satellite =
        load_satellite_inputs(config.satellite_manifest, config.load_options);

    std::vector<ObservationRecord> dehazed;
    if (config.dehazer_mode == DehazerMode::external_rasters) {
        if (!config.dehazed_manifest)
            throw ValidationError("dehazer mode external-rasters needs a manifest");
        dehazed = load_records(*config.dehazed_manifest, config.load_options);
    }

    const std::vector<ObservationRecord> ground =
        load_records(config.ground_manifest, config.load_options);
    const PixelMask ground_mask = load_mask(config.ground_mask);
    std::optional<PixelMask> roi;
    if (config.satellite_roi_mask) roi = load_mask(*config.satellite_roi_mask);

    return evaluate_records(satellite, dehazed, ground, ground_mask, roi, config.params);
}

}  // namespace sage
