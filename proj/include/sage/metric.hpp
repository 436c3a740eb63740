#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sage/align.hpp"
#include "sage/dates.hpp"
#include "sage/ingest.hpp"
#include "sage/series.hpp"

namespace sage {

/// How the dehazed satellite images are supplied. The dehazing model itself is
/// outside this repository; external-rasters is the production route, identity
/// is a null model used for calibration and error-path checks.
enum class DehazerMode { external_rasters, identity };

enum class CloudMode { external, builtin, none };

/// Parameters of one evaluation run. Defaults follow the reference setup:
/// threshold h = 0.1 on normalized NDVI, an 11:00-13:00 ground window and
/// 8-day compositing.
struct EvalParams {
    Date start{};
    Date end{};
    CompositeRule composite_rule = CompositeRule::most_recent_valid;
    int composite_window_days = 8;
    CloudMode cloud_mode = CloudMode::external;
    double cloud_brightness_threshold = 0.6;
    int smooth_half_width = 3;
    double peak_min_prominence = 0.05;
    int peak_min_separation_days = 20;
    TimeOfDay ground_window_start = TimeOfDay::from_hm(11, 0);
    TimeOfDay ground_window_end = TimeOfDay::from_hm(13, 0);
    double threshold_h = 0.1;
};

/// Per-timestamp diagnostics, emitted for every satellite index so per-date
/// error readouts can be plotted. Values are on the normalized scale.
struct TimestampDiag {
    Date date;
    double u = 0.0;      // hazy NDVI, normalized by the dehazed series' params
    double u_phi = 0.0;  // dehazed NDVI, normalized by its own params
    bool significant = false;
    std::vector<double> matched_v;      // ground values matched by A
    std::vector<double> matched_v_phi;  // ground values matched by A_phi
    double hazy_term = 0.0;             // mean |u_i - v_q| over matched_v
    double dehazed_term = 0.0;          // mean |u_phi_i - v_q| over matched_v_phi
};

/// The metric output. e_bar and e_phi_bar are the means of the hazy and
/// dehazed error terms over the k significant timestamps.
struct SageReport {
    double e_bar = 0.0;
    double e_phi_bar = 0.0;
    int k = 0;
    double threshold_h = 0.0;
    std::vector<TimestampDiag> per_timestamp;
    ScaleParams u_phi_params;  // also used to normalize u
    ScaleParams v_params;

    // Full series context for reports and plots.
    NdviSeries u_raw, u_norm;
    NdviSeries u_phi_raw, u_phi_norm;
    ExtremaSeries v_raw;
    std::vector<double> v_norm;
    NdviSeries ground_daily;  // smoothed daily ground series the extrema came from
};

/// Indices where |u_i - u_phi_i| > h, strictly. Inputs are the normalized
/// sequences, so h lives in normalized units.
std::vector<int> significant_indices(const std::vector<double>& u_norm,
                                     const std::vector<double>& u_phi_norm, double h);

struct SageErrors {
    double e_bar = 0.0;
    double e_phi_bar = 0.0;
    int k = 0;
    std::vector<double> hazy_terms;     // per index, defined for all of 0..n-1
    std::vector<double> dehazed_terms;  // per index
    std::vector<bool> significant;      // per index
};

/// Error accumulation over the significant timestamps: for each significant i
/// the hazy term is the mean of |u_i - v_q| over the columns matched by A, the
/// dehazed term the mean of |u_phi_i - v_q| over the columns matched by A_phi.
/// Throws NoSignificantTimestampsError when k would be 0.
SageErrors sage_errors(const std::vector<double>& u_norm, const std::vector<double>& u_phi_norm,
                       const std::vector<double>& v_norm, const AlignmentMatrix& A,
                       const AlignmentMatrix& A_phi, double h);

/// One satellite acquisition plus its optional external cloud mask.
struct SatelliteInput {
    ObservationRecord record;
    std::optional<PixelMask> cloud;
};

/// Runs the full pipeline on in-memory records: per-image cloud masking,
/// dehazer binding, 8-day compositing, NDVI sequence extraction, ground daily
/// series, smoothing, extrema detection, normalization (v by itself, u_phi by
/// itself, u by u_phi's params), the two DTW alignments and the error
/// accumulation. `dehazed` empty means the identity binding. Errors from any
/// stage propagate with a stage label.
SageReport evaluate_records(const std::vector<SatelliteInput>& satellite,
                            const std::vector<ObservationRecord>& dehazed,
                            const std::vector<ObservationRecord>& ground,
                            const PixelMask& ground_mask,
                            const std::optional<PixelMask>& satellite_roi,
                            const EvalParams& params);

}  // namespace sage
