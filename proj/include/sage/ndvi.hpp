#pragma once

#include <optional>

#include "sage/raster.hpp"

namespace sage {

/// Normalized Difference Vegetation Index for one pixel: (nir - red) / (nir + red).
/// Returns nullopt (no-data) when nir + red == 0 or either input is negative or
/// non-finite; any numeric substitute would bias region statistics.
std::optional<double> ndvi_pixel(double nir, double red);

/// Arithmetic mean of ndvi_pixel over pixels that are valid, mask-true and
/// defined. Summation is in row-major order, so the result is deterministic.
/// Throws EmptyRegionError when no pixel contributes.
double mean_ndvi(const Raster& raster, const PixelMask& mask);

}  // namespace sage
