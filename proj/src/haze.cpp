#include "sage/haze.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sage {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Grid dark_channel(const Raster& raster, int patch_radius) {
    if (patch_radius < 0) throw ValidationError("patch_radius must be >= 0");
    const Grid& r = raster.band("red");
    const Grid& g = raster.band("green");
    const Grid& b = raster.band("blue");

    const int w = raster.width, h = raster.height;

    // Per-pixel channel minimum on the 0-255 scale; invalid pixels are +inf so
    // they never win a neighborhood minimum.
    Grid chan_min(w, h, kInf);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!raster.valid.at(x, y)) continue;
            const double m = std::min({r.at(x, y), g.at(x, y), b.at(x, y)});
            chan_min.at(x, y) = to_intensity255(m, raster.scale);
        }
    }

    // Separable min filter, border-clipped.
    Grid row_min(w, h, kInf);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - patch_radius);
            const int x1 = std::min(w - 1, x + patch_radius);
            double m = kInf;
            for (int xx = x0; xx <= x1; ++xx) m = std::min(m, chan_min.at(xx, y));
            row_min.at(x, y) = m;
        }
    }
    Grid out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const int y0 = std::max(0, y - patch_radius);
            const int y1 = std::min(h - 1, y + patch_radius);
            double m = kInf;
            for (int yy = y0; yy <= y1; ++yy) m = std::min(m, row_min.at(x, yy));
            out.at(x, y) = std::isinf(m) ? std::numeric_limits<double>::quiet_NaN() : m;
        }
    }
    return out;
}

double haze_score(const Raster& raster, int patch_radius) {
    const Grid dc = dark_channel(raster, patch_radius);
    double sum = 0.0;
    long n = 0;
    for (int y = 0; y < raster.height; ++y) {
        for (int x = 0; x < raster.width; ++x) {
            if (!raster.valid.at(x, y)) continue;
            // A valid center pixel always contributes itself to the window min.
            sum += dc.at(x, y);
            ++n;
        }
    }
    if (n == 0) throw EmptyRegionError("haze score over raster with no valid pixels", 0, 0, 0);
    return sum / static_cast<double>(n);
}

}  // namespace sage
