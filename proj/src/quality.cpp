#include "sage/quality.hpp"

#include <cmath>
#include <limits>

namespace sage {

namespace {

void check_comparable(const Raster& a, const Raster& b) {
    if (!a.same_shape(b))
        throw DimensionMismatchError("rasters have different dimensions: " +
                                     std::to_string(a.width) + "x" + std::to_string(a.height) +
                                     " vs " + std::to_string(b.width) + "x" +
                                     std::to_string(b.height));
    if (a.bands.size() != b.bands.size())
        throw DimensionMismatchError("rasters have different band sets");
    for (const auto& [name, grid] : a.bands) {
        (void)grid;
        if (!b.has_band(name))
            throw DimensionMismatchError("rasters have different band sets: missing '" + name + "'");
    }
}

}  // namespace

double psnr(const Raster& a, const Raster& b, double peak) {
    check_comparable(a, b);
    if (peak <= 0.0) throw ValidationError("psnr peak must be > 0");

    double sq_sum = 0.0;
    long n = 0;
    for (const auto& [name, ga] : a.bands) {
        const Grid& gb = b.band(name);
        for (int y = 0; y < a.height; ++y) {
            for (int x = 0; x < a.width; ++x) {
                if (!a.valid.at(x, y) || !b.valid.at(x, y)) continue;
                const double d = to_intensity255(ga.at(x, y), a.scale) -
                                 to_intensity255(gb.at(x, y), b.scale);
                sq_sum += d * d;
                ++n;
            }
        }
    }
    if (n == 0) throw EmptyRegionError("psnr over zero jointly valid pixels", 0, 0, 0);
    const double mse = sq_sum / static_cast<double>(n);
    if (mse == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(peak * peak / mse);
}

double ssim(const Raster& a, const Raster& b, int window, double k1, double k2, double peak) {
    check_comparable(a, b);
    if (window < 3 || window % 2 == 0) throw ValidationError("ssim window must be odd and >= 3");
    if (a.width < window || a.height < window)
        throw DimensionMismatchError("image smaller than ssim window");

    const double c1 = (k1 * peak) * (k1 * peak);
    const double c2 = (k2 * peak) * (k2 * peak);

    double band_sum = 0.0;
    int band_n = 0;
    for (const auto& [name, ga] : a.bands) {
        const Grid& gb = b.band(name);
        double win_sum = 0.0;
        long win_n = 0;
        for (int y0 = 0; y0 + window <= a.height; ++y0) {
            for (int x0 = 0; x0 + window <= a.width; ++x0) {
                double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
                long n = 0;
                for (int y = y0; y < y0 + window; ++y) {
                    for (int x = x0; x < x0 + window; ++x) {
                        if (!a.valid.at(x, y) || !b.valid.at(x, y)) continue;
                        const double va = to_intensity255(ga.at(x, y), a.scale);
                        const double vb = to_intensity255(gb.at(x, y), b.scale);
                        sx += va;
                        sy += vb;
                        sxx += va * va;
                        syy += vb * vb;
                        sxy += va * vb;
                        ++n;
                    }
                }
                if (n == 0) continue;
                const double inv = 1.0 / static_cast<double>(n);
                const double mx = sx * inv, my = sy * inv;
                const double vx = sxx * inv - mx * mx;
                const double vy = syy * inv - my * my;
                const double cov = sxy * inv - mx * my;
                const double val = ((2.0 * mx * my + c1) * (2.0 * cov + c2)) /
                                   ((mx * mx + my * my + c1) * (vx + vy + c2));
                win_sum += val;
                ++win_n;
            }
        }
        if (win_n > 0) {
            band_sum += win_sum / static_cast<double>(win_n);
            ++band_n;
        }
    }
    if (band_n == 0) throw EmptyRegionError("ssim over zero jointly valid windows", 0, 0, 0);
    return band_sum / static_cast<double>(band_n);
}

}  // namespace sage
