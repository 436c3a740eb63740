#pragma once

#include "sage/raster.hpp"

namespace sage {

/// Peak signal-to-noise ratio in dB: 10*log10(peak^2 / MSE). MSE is the mean
/// squared per-band difference over jointly valid pixels, computed on the
/// 0-255 intensity scale (peak defaults to 255 accordingly). Identical inputs
/// (MSE == 0) return +infinity. Cloud-masked holes do not count as error.
double psnr(const Raster& a, const Raster& b, double peak = 255.0);

/// Mean local SSIM over sliding windows that fit fully inside the image,
/// computed per band on the 0-255 scale and then averaged across bands.
/// Window statistics use the jointly valid pixels of each placement and the
/// 1/N variance convention; windows with no jointly valid pixel are skipped.
/// Uniform (unweighted) window; constants C1 = (k1*peak)^2, C2 = (k2*peak)^2.
double ssim(const Raster& a, const Raster& b, int window = 11, double k1 = 0.01,
            double k2 = 0.03, double peak = 255.0);

}  // namespace sage
