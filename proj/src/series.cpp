#include "sage/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sage {

NdviSeries smooth(const NdviSeries& series, int half_width) {
    if (half_width < 0) throw ValidationError("smoothing half_width must be >= 0");
    if (series.empty()) throw ValidationError("cannot smooth an empty series");
    const auto n = static_cast<int>(series.size());
    NdviSeries out;
    out.entries.reserve(series.size());
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - half_width);
        const int hi = std::min(n - 1, i + half_width);
        double sum = 0.0;
        for (int j = lo; j <= hi; ++j) sum += series.entries[j].value;
        out.entries.push_back({series.entries[i].date, sum / (hi - lo + 1)});
    }
    return out;
}

double peak_prominence(const std::vector<double>& values, size_t peak) {
    const double v = values[peak];
    double left_min = std::numeric_limits<double>::infinity();
    for (size_t j = peak; j-- > 0;) {
        if (values[j] > v) break;
        left_min = std::min(left_min, values[j]);
    }
    double right_min = std::numeric_limits<double>::infinity();
    for (size_t j = peak + 1; j < values.size(); ++j) {
        if (values[j] > v) break;
        right_min = std::min(right_min, values[j]);
    }
    return v - std::max(left_min, right_min);
}

ExtremaSeries detect_extrema(const NdviSeries& series, double min_prominence,
                             int min_separation_days) {
    if (min_prominence <= 0.0) throw ValidationError("min_prominence must be > 0");
    if (min_separation_days < 0) throw ValidationError("min_separation_days must be >= 0");
    const std::vector<double> v = series.values();
    const size_t n = v.size();

    // Strict interior local maxima passing the prominence bar.
    std::vector<size_t> candidates;
    for (size_t i = 1; i + 1 < n; ++i) {
        if (v[i] > v[i - 1] && v[i] > v[i + 1] && peak_prominence(v, i) >= min_prominence)
            candidates.push_back(i);
    }

    // Enforce the minimum date separation, keeping taller peaks first.
    std::vector<size_t> by_height = candidates;
    std::stable_sort(by_height.begin(), by_height.end(), [&](size_t a, size_t b) {
        if (v[a] != v[b]) return v[a] > v[b];
        return a < b;
    });
    std::vector<size_t> accepted;
    for (size_t i : by_height) {
        const Date di = series.entries[i].date;
        bool ok = true;
        for (size_t j : accepted) {
            if (std::abs(di - series.entries[j].date) < min_separation_days) {
                ok = false;
                break;
            }
        }
        if (ok) accepted.push_back(i);
    }
    std::sort(accepted.begin(), accepted.end());

    if (accepted.empty())
        throw FlatSeriesError(
            "no peak with prominence >= " + std::to_string(min_prominence) +
            " found; the ground series may be flat or the prominence too high");

    // Troughs: earliest minimum in each inter-peak span, plus the spans before
    // the first peak and after the last one. Alternation holds by construction.
    const auto trough_in = [&](size_t lo, size_t hi) {  // [lo, hi)
        size_t best = lo;
        for (size_t j = lo + 1; j < hi; ++j)
            if (v[j] < v[best]) best = j;
        return best;
    };

    ExtremaSeries out;
    out.entries.reserve(2 * accepted.size() + 1);
    size_t span_start = 0;
    for (size_t pi = 0; pi < accepted.size(); ++pi) {
        const size_t t = trough_in(span_start, accepted[pi]);
        out.entries.push_back({series.entries[t].date, v[t], ExtremumKind::trough});
        out.entries.push_back(
            {series.entries[accepted[pi]].date, v[accepted[pi]], ExtremumKind::peak});
        span_start = accepted[pi] + 1;
    }
    const size_t t = trough_in(span_start, n);
    out.entries.push_back({series.entries[t].date, v[t], ExtremumKind::trough});
    return out;
}

ScaleParams minmax_params(const std::vector<double>& values) {
    if (values.size() < 2)
        throw DegenerateRangeError("min-max normalization needs at least 2 values, got " +
                                   std::to_string(values.size()));
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    if (*lo == *hi)
        throw DegenerateRangeError("min-max range is zero (all values equal " +
                                   std::to_string(*lo) + ")");
    return ScaleParams{*lo, *hi};
}

ScaleParams minmax_params(const NdviSeries& series) { return minmax_params(series.values()); }

std::vector<double> normalize(const std::vector<double>& values, const ScaleParams& params) {
    if (!(params.max > params.min))
        throw DegenerateRangeError("cannot normalize with a degenerate range");
    const double span = params.max - params.min;
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) out.push_back((v - params.min) / span);
    return out;
}

NdviSeries normalize(const NdviSeries& series, const ScaleParams& params) {
    const std::vector<double> vals = normalize(series.values(), params);
    NdviSeries out;
    out.entries.reserve(vals.size());
    for (size_t i = 0; i < vals.size(); ++i)
        out.entries.push_back({series.entries[i].date, vals[i]});
    return out;
}

}  // namespace sage
