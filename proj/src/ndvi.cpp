#include "sage/ndvi.hpp"

#include <cmath>

namespace sage {

std::optional<double> ndvi_pixel(double nir, double red) {
    if (!std::isfinite(nir) || !std::isfinite(red) || nir < 0.0 || red < 0.0)
        return std::nullopt;
    const double sum = nir + red;
    if (sum == 0.0) return std::nullopt;
    return (nir - red) / sum;
}

double mean_ndvi(const Raster& raster, const PixelMask& mask) {
    const Grid& nir = raster.band("nir");
    const Grid& red = raster.band("red");
    if (!mask.same_shape(raster.width, raster.height))
        throw DimensionMismatchError("mask dimensions do not match raster");

    double sum = 0.0;
    long valid_n = 0, masked_n = 0, defined_n = 0;
    for (int y = 0; y < raster.height; ++y) {
        for (int x = 0; x < raster.width; ++x) {
            if (!raster.valid.at(x, y)) continue;
            ++valid_n;
            if (!mask.at(x, y)) continue;
            ++masked_n;
            const auto v = ndvi_pixel(nir.at(x, y), red.at(x, y));
            if (!v) continue;
            ++defined_n;
            sum += *v;
        }
    }
    if (defined_n == 0)
        throw EmptyRegionError("mean NDVI over empty region", valid_n, masked_n, defined_n);
    return sum / static_cast<double>(defined_n);
}

}  // namespace sage
