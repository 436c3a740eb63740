#include "sage/metric.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "sage/log.hpp"
#include "sage/ndvi.hpp"

namespace sage {

std::vector<int> significant_indices(const std::vector<double>& u_norm,
                                     const std::vector<double>& u_phi_norm, double h) {
    if (u_norm.size() != u_phi_norm.size())
        throw DimensionMismatchError("significant_indices: sequence lengths differ (" +
                                     std::to_string(u_norm.size()) + " vs " +
                                     std::to_string(u_phi_norm.size()) + ")");
    if (h <= 0.0) throw ValidationError("threshold h must be > 0");
    std::vector<int> out;
    for (size_t i = 0; i < u_norm.size(); ++i)
        if (std::abs(u_norm[i] - u_phi_norm[i]) > h) out.push_back(static_cast<int>(i));
    return out;
}

SageErrors sage_errors(const std::vector<double>& u_norm, const std::vector<double>& u_phi_norm,
                       const std::vector<double>& v_norm, const AlignmentMatrix& A,
                       const AlignmentMatrix& A_phi, double h) {
    const int n = static_cast<int>(u_norm.size());
    const int m = static_cast<int>(v_norm.size());
    if (A.rows != n || A.cols != m)
        throw DimensionMismatchError("alignment matrix A does not match (n, m)");
    if (A_phi.rows != n || A_phi.cols != m)
        throw DimensionMismatchError("alignment matrix A_phi does not match (n, m)");

    const std::vector<int> sig = significant_indices(u_norm, u_phi_norm, h);

    SageErrors res;
    res.hazy_terms.resize(n);
    res.dehazed_terms.resize(n);
    res.significant.assign(n, false);
    for (int idx : sig) res.significant[idx] = true;

    // Terms are computed for every index so diagnostics cover the whole
    // sequence; only significant ones enter the sums.
    const auto mean_err = [&](const AlignmentMatrix& M, const std::vector<double>& seq, int i) {
        const std::vector<int> q = matched_columns(M, i);
        double s = 0.0;
        for (int j : q) s += std::abs(seq[i] - v_norm[j]);
        return s / static_cast<double>(q.size());
    };
    for (int i = 0; i < n; ++i) {
        res.hazy_terms[i] = mean_err(A, u_norm, i);
        res.dehazed_terms[i] = mean_err(A_phi, u_phi_norm, i);
    }

    if (sig.empty()) {
        double max_diff = 0.0;
        for (int i = 0; i < n; ++i)
            max_diff = std::max(max_diff, std::abs(u_norm[i] - u_phi_norm[i]));
        throw NoSignificantTimestampsError(
            "no timestamp where |u - u_phi| exceeds h = " + std::to_string(h), max_diff);
    }

    double e = 0.0, e_phi = 0.0;
    for (int i : sig) {
        e += res.hazy_terms[i];
        e_phi += res.dehazed_terms[i];
    }
    res.k = static_cast<int>(sig.size());
    res.e_bar = e / res.k;
    res.e_phi_bar = e_phi / res.k;
    return res;
}

namespace {

struct Stage {
    // Attaches the stage name to any domain error escaping the scope.
    template <typename F>
    static auto run(const std::string& name, F&& f) -> decltype(f()) {
        try {
            return f();
        } catch (SageError& e) {
            e.set_stage(name);
            throw;
        }
    }
};

}  // namespace

SageReport evaluate_records(const std::vector<SatelliteInput>& satellite,
                            const std::vector<ObservationRecord>& dehazed,
                            const std::vector<ObservationRecord>& ground,
                            const PixelMask& ground_mask,
                            const std::optional<PixelMask>& satellite_roi,
                            const EvalParams& params) {
    if (satellite.empty()) throw ValidationError("no satellite records supplied");
    if (ground.empty()) throw ValidationError("no ground records supplied");
    if (params.threshold_h <= 0.0) throw ValidationError("threshold h must be > 0");

    // Lines 1-3: per-image cloud mask.
    std::vector<ObservationRecord> masked;
    std::map<Timestamp, PixelMask> applied_masks;
    Stage::run("cloud-mask", [&] {
        masked.reserve(satellite.size());
        for (const auto& input : satellite) {
            PixelMask cloud;
            if (input.cloud) {
                cloud = *input.cloud;
            } else if (params.cloud_mode == CloudMode::builtin) {
                cloud = detect_clouds(input.record.raster, params.cloud_brightness_threshold);
            } else {
                if (params.cloud_mode == CloudMode::external)
                    log_warn("no external cloud mask for satellite record at " +
                             input.record.timestamp.to_string() + "; treating as cloud-free");
                cloud = PixelMask(input.record.raster.width, input.record.raster.height, false);
            }
            ObservationRecord r = input.record;
            r.raster = apply_cloud_mask(input.record.raster, cloud);
            applied_masks.emplace(r.timestamp, cloud);
            masked.push_back(std::move(r));
        }
    });

    // Line 4: dehazer binding. External rasters pair 1:1 with the masked hazy
    // records by timestamp and inherit their cloud masks; an empty list is the
    // identity binding.
    std::vector<ObservationRecord> dehazed_masked;
    Stage::run("dehazer-binding", [&] {
        if (dehazed.empty()) {
            dehazed_masked = masked;
            return;
        }
        if (dehazed.size() != masked.size())
            throw ValidationError("dehazed manifest must supply exactly one raster per satellite "
                                  "image (got " +
                                  std::to_string(dehazed.size()) + " for " +
                                  std::to_string(masked.size()) + ")");
        for (const auto& d : dehazed) {
            const auto it = applied_masks.find(d.timestamp);
            if (it == applied_masks.end())
                throw ValidationError("dehazed record at " + d.timestamp.to_string() +
                                      " has no hazy counterpart");
            if (d.raster.width != it->second.width || d.raster.height != it->second.height)
                throw DimensionMismatchError("dehazed raster at " + d.timestamp.to_string() +
                                             " does not match its hazy counterpart");
            ObservationRecord r = d;
            r.raster = apply_cloud_mask(d.raster, it->second);
            dehazed_masked.push_back(std::move(r));
        }
        std::sort(dehazed_masked.begin(), dehazed_masked.end(),
                  [](const ObservationRecord& a, const ObservationRecord& b) {
                      return a.timestamp < b.timestamp;
                  });
    });

    // Compositing to the fixed delivery cadence.
    std::vector<Composite> hazy_comp, dehazed_comp;
    Stage::run("compositing", [&] {
        hazy_comp = composite_8day(masked, params.start, params.end, params.composite_rule,
                                   params.composite_window_days);
        dehazed_comp = composite_8day(dehazed_masked, params.start, params.end,
                                      params.composite_rule, params.composite_window_days);
        if (hazy_comp.size() != dehazed_comp.size())
            throw ValidationError("hazy and dehazed composites cover different window sets");
    });

    // Line 5: mean NDVI sequences u and u_phi. A window where either side has
    // an empty region is dropped from both to keep the sequences aligned.
    SageReport report;
    report.threshold_h = params.threshold_h;
    Stage::run("satellite-ndvi", [&] {
        for (size_t i = 0; i < hazy_comp.size(); ++i) {
            if (hazy_comp[i].window_start != dehazed_comp[i].window_start)
                throw ValidationError("hazy and dehazed composite windows disagree");
            const Raster& hr = hazy_comp[i].raster;
            PixelMask roi = satellite_roi ? *satellite_roi : PixelMask(hr.width, hr.height, true);
            try {
                const double u_i = mean_ndvi(hr, roi);
                const double u_phi_i = mean_ndvi(dehazed_comp[i].raster, roi);
                report.u_raw.entries.push_back({hazy_comp[i].window_start, u_i});
                report.u_phi_raw.entries.push_back({hazy_comp[i].window_start, u_phi_i});
            } catch (const EmptyRegionError&) {
                log_warn("satellite window " + hazy_comp[i].window_start.to_string() +
                         " dropped: no valid NDVI pixels");
            }
        }
        if (report.u_raw.empty())
            throw EmptyRegionError("every satellite window was empty after masking", 0, 0, 0);
    });

    // Ground daily series, denoising, extrema.
    Stage::run("ground-series", [&] {
        const auto windowed =
            ground_window_filter(ground, params.ground_window_start, params.ground_window_end);
        const NdviSeries daily = ground_daily_series(windowed, ground_mask);
        if (daily.empty()) throw EmptyRegionError("ground series is empty", 0, 0, 0);
        report.ground_daily = smooth(daily, params.smooth_half_width);
        report.v_raw = detect_extrema(report.ground_daily, params.peak_min_prominence,
                                      params.peak_min_separation_days);
    });

    // Line 6: min-max normalization; u uses the dehazed series' parameters so
    // hazy outliers keep their true offset.
    Stage::run("normalization", [&] {
        report.u_phi_params = minmax_params(report.u_phi_raw);
        report.v_params = minmax_params(report.v_raw.values());
        report.u_norm = normalize(report.u_raw, report.u_phi_params);
        report.u_phi_norm = normalize(report.u_phi_raw, report.u_phi_params);
        report.v_norm = normalize(report.v_raw.values(), report.v_params);
    });

    // Lines 7-17: the two alignments and the error accumulation.
    return Stage::run("alignment-and-errors", [&]() -> SageReport {
        const AlignmentMatrix A = dtw_align(report.u_norm.values(), report.v_norm);
        const AlignmentMatrix A_phi = dtw_align(report.u_phi_norm.values(), report.v_norm);
        const SageErrors errs = sage_errors(report.u_norm.values(), report.u_phi_norm.values(),
                                            report.v_norm, A, A_phi, params.threshold_h);
        report.e_bar = errs.e_bar;
        report.e_phi_bar = errs.e_phi_bar;
        report.k = errs.k;
        const int n = static_cast<int>(report.u_norm.size());
        report.per_timestamp.reserve(n);
        for (int i = 0; i < n; ++i) {
            TimestampDiag d;
            d.date = report.u_norm.entries[i].date;
            d.u = report.u_norm.entries[i].value;
            d.u_phi = report.u_phi_norm.entries[i].value;
            d.significant = errs.significant[i];
            for (int j : matched_columns(A, i)) d.matched_v.push_back(report.v_norm[j]);
            for (int j : matched_columns(A_phi, i)) d.matched_v_phi.push_back(report.v_norm[j]);
            d.hazy_term = errs.hazy_terms[i];
            d.dehazed_term = errs.dehazed_terms[i];
            report.per_timestamp.push_back(std::move(d));
        }
        return report;
    });
}

}  // namespace sage
