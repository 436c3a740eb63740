#pragma once

#include <vector>

#include "sage/dates.hpp"
#include "sage/errors.hpp"

namespace sage {

struct SeriesEntry {
    Date date;
    double value = 0.0;
};

/// Timestamped sequence of scalar NDVI values, dates strictly increasing.
struct NdviSeries {
    std::vector<SeriesEntry> entries;

    size_t size() const { return entries.size(); }
    bool empty() const { return entries.empty(); }

    std::vector<double> values() const {
        std::vector<double> out;
        out.reserve(entries.size());
        for (const auto& e : entries) out.push_back(e.value);
        return out;
    }
};

enum class ExtremumKind { peak, trough };

struct ExtremaEntry {
    Date date;
    double value = 0.0;
    ExtremumKind kind = ExtremumKind::peak;
};

/// Alternating peak/trough subsequence of a source series; always starts and
/// ends with a trough, so its length is odd.
struct ExtremaSeries {
    std::vector<ExtremaEntry> entries;

    size_t size() const { return entries.size(); }

    std::vector<double> values() const {
        std::vector<double> out;
        out.reserve(entries.size());
        for (const auto& e : entries) out.push_back(e.value);
        return out;
    }
};

/// Min-max normalization parameters.
struct ScaleParams {
    double min = 0.0;
    double max = 1.0;
};

/// Centered moving average over up to 2*half_width+1 neighbors, truncated at
/// the series boundaries. Dates and length are unchanged.
NdviSeries smooth(const NdviSeries& series, int half_width);

/// Peak detection with prominence and minimum date separation, interleaved
/// with troughs: the minimum between consecutive peaks, before the first peak
/// and after the last one. When two peaks are closer than min_separation_days,
/// the taller one wins. Throws FlatSeriesError when no peak qualifies.
ExtremaSeries detect_extrema(const NdviSeries& series, double min_prominence,
                             int min_separation_days);

/// Min and max over the series values. Throws DegenerateRangeError when the
/// series is shorter than 2 or the range is zero.
ScaleParams minmax_params(const NdviSeries& series);
ScaleParams minmax_params(const std::vector<double>& values);

/// Affine map value -> (value - min) / (max - min). With the series' own
/// params the output lies in [0, 1]; with another series' params (the hazy-u
/// case) values may fall outside [0, 1], preserving the true relative offset.
NdviSeries normalize(const NdviSeries& series, const ScaleParams& params);
std::vector<double> normalize(const std::vector<double>& values, const ScaleParams& params);

/// Prominence of a local maximum at index `peak`: height above the higher of
/// the two base minima, where each base extends to the nearest strictly
/// higher point (or the series end). Exposed for testability.
double peak_prominence(const std::vector<double>& values, size_t peak);

}  // namespace sage
