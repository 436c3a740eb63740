#include "sage/errors.hpp"

namespace sage {

int exit_code(ErrorCode code) {
    switch (code) {
        case ErrorCode::validation: return 2;
        case ErrorCode::io: return 3;
        case ErrorCode::dimension_mismatch: return 4;
        case ErrorCode::empty_region: return 5;
        case ErrorCode::flat_series: return 6;
        case ErrorCode::degenerate_range: return 7;
        case ErrorCode::no_significant_timestamps: return 8;
        case ErrorCode::internal: break;
    }
    return 70;
}

const char* error_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::validation: return "validation";
        case ErrorCode::io: return "io";
        case ErrorCode::dimension_mismatch: return "dimension-mismatch";
        case ErrorCode::empty_region: return "empty-region";
        case ErrorCode::flat_series: return "flat-series";
        case ErrorCode::degenerate_range: return "degenerate-range";
        case ErrorCode::no_significant_timestamps: return "no-significant-timestamps";
        case ErrorCode::internal: break;
    }
    return "internal";
}

}  // namespace sage
