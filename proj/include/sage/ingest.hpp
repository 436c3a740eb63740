#pragma once

#include <vector>

#include "sage/dates.hpp"
#include "sage/raster.hpp"
#include "sage/series.hpp"

namespace sage {

enum class SourceKind { satellite, ground };

/// One acquisition. Ground records carry red/green/blue plus a nir band merged
/// into a single raster (the nir image is loaded from its own file and merged
/// at ingestion time). Collections are kept sorted ascending by timestamp.
struct ObservationRecord {
    Timestamp timestamp;
    Raster raster;
    SourceKind source = SourceKind::satellite;
};

enum class CompositeRule { most_recent_valid, per_pixel_median };

struct Composite {
    Date window_start;
    Raster raster;
};

/// Fixed-interval temporal compositing: one output raster per window of
/// `window_days` days in [start, end) that contains at least one record.
/// Records are deduplicated by timestamp first. Per pixel, the rule picks the
/// value across the members valid at that pixel; output validity is the union
/// of member validity. Windows with no member are omitted, so the output
/// length is at most ceil((end-start)/window_days).
std::vector<Composite> composite_8day(const std::vector<ObservationRecord>& records, Date start,
                                      Date end, CompositeRule rule, int window_days = 8);

/// Output validity = input validity AND NOT cloud; band values unchanged.
/// Idempotent for a fixed mask.
Raster apply_cloud_mask(const Raster& raster, const PixelMask& cloud);

/// Built-in heuristic cloud detector: a pixel is cloudy when red, green and
/// blue all exceed brightness_threshold (a fraction of the full intensity
/// scale). Callers with a real cloud product should supply an external mask
/// instead; this is the fallback role.
PixelMask detect_clouds(const Raster& raster, double brightness_threshold = 0.6);

/// Keeps records whose time of day lies in [window_start, window_end], both
/// ends inclusive. Order preserved.
std::vector<ObservationRecord> ground_window_filter(const std::vector<ObservationRecord>& records,
                                                    TimeOfDay window_start, TimeOfDay window_end);

/// Daily mean NDVI of the masked ground records: one entry per calendar day
/// with at least one record whose region is non-empty. Records are weighted
/// equally within a day. Days where every record fails with an empty region
/// are omitted with a warning.
NdviSeries ground_daily_series(const std::vector<ObservationRecord>& records,
                               const PixelMask& mask);

}  // namespace sage
