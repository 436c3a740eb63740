#pragma once

#include <stdexcept>
#include <string>

namespace sage {

/// Terminal error classes. Each maps to a distinct process exit code so that
/// callers and scripts can tell failure modes apart.
enum class ErrorCode {
    validation,                 // bad config, bad arguments, unparseable manifest
    io,                         // unreadable or unwritable file
    dimension_mismatch,         // raster/mask/sequence shapes disagree
    empty_region,               // no contributing pixels where at least one is required
    flat_series,                // ground series has no detectable peak
    degenerate_range,           // min-max normalization impossible (max == min or too short)
    no_significant_timestamps,  // k == 0: no timestamp where dehazing changed NDVI by > h
    internal,                   // unexpected failure
};

int exit_code(ErrorCode code);
const char* error_name(ErrorCode code);

class SageError : public std::runtime_error {
  public:
    SageError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code), message_(message) {}

    ErrorCode code() const { return code_; }
    const char* what() const noexcept override { return message_.c_str(); }

    /// Prefixes the message with a pipeline stage label, once.
    void set_stage(const std::string& stage) {
        if (staged_) return;
        staged_ = true;
        message_ = "[" + stage + "] " + message_;
    }

  private:
    ErrorCode code_;
    std::string message_;
    bool staged_ = false;
};

class ValidationError : public SageError {
  public:
    explicit ValidationError(const std::string& msg) : SageError(ErrorCode::validation, msg) {}
};

class IoError : public SageError {
  public:
    explicit IoError(const std::string& msg) : SageError(ErrorCode::io, msg) {}
};

class DimensionMismatchError : public SageError {
  public:
    explicit DimensionMismatchError(const std::string& msg)
        : SageError(ErrorCode::dimension_mismatch, msg) {}
};

/// Thrown when a region reduction has zero contributing pixels. Carries the
/// pixel counts seen along the way for diagnosis.
class EmptyRegionError : public SageError {
  public:
    EmptyRegionError(const std::string& msg, long valid_pixels, long masked_in_pixels,
                     long defined_pixels)
        : SageError(ErrorCode::empty_region,
                    msg + " (valid=" + std::to_string(valid_pixels) +
                        ", masked-in=" + std::to_string(masked_in_pixels) +
                        ", defined=" + std::to_string(defined_pixels) + ")"),
          valid_pixels(valid_pixels),
          masked_in_pixels(masked_in_pixels),
          defined_pixels(defined_pixels) {}

    long valid_pixels;
    long masked_in_pixels;
    long defined_pixels;
};

class FlatSeriesError : public SageError {
  public:
    explicit FlatSeriesError(const std::string& msg) : SageError(ErrorCode::flat_series, msg) {}
};

class DegenerateRangeError : public SageError {
  public:
    explicit DegenerateRangeError(const std::string& msg)
        : SageError(ErrorCode::degenerate_range, msg) {}
};

/// k == 0: dividing by k is forbidden, so this is a typed error. Carries the
/// largest observed |u_i - u_i^phi| so callers can judge their threshold h.
class NoSignificantTimestampsError : public SageError {
  public:
    NoSignificantTimestampsError(const std::string& msg, double max_abs_diff)
        : SageError(ErrorCode::no_significant_timestamps,
                    msg + " (max |u - u_phi| = " + std::to_string(max_abs_diff) + ")"),
          max_abs_diff(max_abs_diff) {}

    double max_abs_diff;
};

}  // namespace sage
