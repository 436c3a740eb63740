#include "sage/ingest.hpp"

#include <algorithm>
#include <cmath>

#include "sage/log.hpp"
#include "sage/ndvi.hpp"

namespace sage {

namespace {

void require_sorted(const std::vector<ObservationRecord>& records) {
    const bool sorted = std::is_sorted(
        records.begin(), records.end(),
        [](const ObservationRecord& a, const ObservationRecord& b) { return a.timestamp < b.timestamp; });
    if (!sorted) throw ValidationError("records must be sorted ascending by timestamp");
}

double median_of(std::vector<double>& vals) {
    std::sort(vals.begin(), vals.end());
    const size_t n = vals.size();
    if (n % 2 == 1) return vals[n / 2];
    return 0.5 * (vals[n / 2 - 1] + vals[n / 2]);
}

}  // namespace

std::vector<Composite> composite_8day(const std::vector<ObservationRecord>& records, Date start,
                                      Date end, CompositeRule rule, int window_days) {
    if (!(start < end)) throw ValidationError("composite range start must precede end");
    if (window_days < 1) throw ValidationError("composite window_days must be >= 1");
    require_sorted(records);

    // Deduplicate by timestamp: compositing must be insensitive to repeats.
    std::vector<const ObservationRecord*> unique;
    unique.reserve(records.size());
    for (const auto& r : records) {
        if (!unique.empty() && unique.back()->timestamp == r.timestamp) continue;
        unique.push_back(&r);
    }

    std::vector<Composite> out;
    size_t cursor = 0;
    for (Date ws = start; ws < end; ws = ws + window_days) {
        const Date we = ws + window_days;
        while (cursor < unique.size() && unique[cursor]->timestamp.date < ws) ++cursor;
        std::vector<const ObservationRecord*> members;
        for (size_t k = cursor; k < unique.size() && unique[k]->timestamp.date < we; ++k) {
            if (unique[k]->timestamp.date >= ws) members.push_back(unique[k]);
        }
        if (members.empty()) continue;

        const Raster& first = members.front()->raster;
        for (const auto* m : members) {
            if (!m->raster.same_shape(first) || m->raster.bands.size() != first.bands.size())
                throw DimensionMismatchError("composite member at " + m->timestamp.to_string() +
                                             " does not match the window's first raster");
            for (const auto& [name, g] : first.bands) {
                (void)g;
                if (!m->raster.has_band(name))
                    throw DimensionMismatchError("composite member at " + m->timestamp.to_string() +
                                                 " is missing band '" + name + "'");
            }
            if (m->raster.scale != first.scale)
                throw ValidationError("composite member at " + m->timestamp.to_string() +
                                      " declares a different value scale");
        }

        Raster comp(first.width, first.height, first.scale);
        comp.valid = PixelMask(first.width, first.height, false);
        for (const auto& [name, g] : first.bands) {
            (void)g;
            comp.add_band(name);
        }

        for (int y = 0; y < comp.height; ++y) {
            for (int x = 0; x < comp.width; ++x) {
                bool any = false;
                if (rule == CompositeRule::most_recent_valid) {
                    // Members are time-ordered; the last valid one wins.
                    for (const auto* m : members) {
                        if (!m->raster.valid.at(x, y)) continue;
                        any = true;
                        for (auto& [name, g] : comp.bands)
                            g.at(x, y) = m->raster.band(name).at(x, y);
                    }
                } else {
                    for (auto& [name, g] : comp.bands) {
                        std::vector<double> vals;
                        for (const auto* m : members)
                            if (m->raster.valid.at(x, y)) vals.push_back(m->raster.band(name).at(x, y));
                        if (!vals.empty()) {
                            any = true;
                            g.at(x, y) = median_of(vals);
                        }
                    }
                }
                comp.valid.set(x, y, any);
            }
        }
        out.push_back(Composite{ws, std::move(comp)});
    }
    return out;
}

Raster apply_cloud_mask(const Raster& raster, const PixelMask& cloud) {
    if (!cloud.same_shape(raster.width, raster.height))
        throw DimensionMismatchError("cloud mask dimensions do not match raster");
    Raster out = raster;
    for (int y = 0; y < out.height; ++y)
        for (int x = 0; x < out.width; ++x)
            out.valid.set(x, y, raster.valid.at(x, y) && !cloud.at(x, y));
    return out;
}

PixelMask detect_clouds(const Raster& raster, double brightness_threshold) {
    if (brightness_threshold < 0.0 || brightness_threshold > 1.0)
        throw ValidationError("cloud brightness_threshold must lie in [0, 1]");
    const Grid& r = raster.band("red");
    const Grid& g = raster.band("green");
    const Grid& b = raster.band("blue");
    const double thr = brightness_threshold * 255.0;

    PixelMask mask(raster.width, raster.height, false);
    for (int y = 0; y < raster.height; ++y) {
        for (int x = 0; x < raster.width; ++x) {
            const bool cloudy = to_intensity255(r.at(x, y), raster.scale) > thr &&
                                to_intensity255(g.at(x, y), raster.scale) > thr &&
                                to_intensity255(b.at(x, y), raster.scale) > thr;
            mask.set(x, y, cloudy);
        }
    }
    return mask;
}

std::vector<ObservationRecord> ground_window_filter(const std::vector<ObservationRecord>& records,
                                                    TimeOfDay window_start, TimeOfDay window_end) {
    if (!(window_start < window_end))
        throw ValidationError("ground time window start must precede end");
    std::vector<ObservationRecord> out;
    for (const auto& r : records)
        if (r.timestamp.time >= window_start && r.timestamp.time <= window_end) out.push_back(r);
    return out;
}

NdviSeries ground_daily_series(const std::vector<ObservationRecord>& records,
                               const PixelMask& mask) {
    require_sorted(records);
    NdviSeries out;
    size_t i = 0;
    while (i < records.size()) {
        const Date day = records[i].timestamp.date;
        double sum = 0.0;
        int n = 0;
        int failed = 0;
        for (; i < records.size() && records[i].timestamp.date == day; ++i) {
            try {
                sum += mean_ndvi(records[i].raster, mask);
                ++n;
            } catch (const EmptyRegionError&) {
                ++failed;
            }
        }
        if (n > 0) {
            out.entries.push_back({day, sum / n});
        } else {
            log_warn("ground day " + day.to_string() + " omitted: all " + std::to_string(failed) +
                     " records had an empty masked region");
        }
    }
    return out;
}

}  // namespace sage
