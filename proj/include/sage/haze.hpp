#pragma once

#include "sage/raster.hpp"

namespace sage {

/// Default haze threshold on the 0-255 intensity scale.
inline constexpr double kHazeThreshold = 20.0;
/// Default patch radius: 15x15 neighborhood.
inline constexpr int kDarkChannelRadius = 7;

/// Dark channel: per pixel, the minimum over {red, green, blue} of the minimum
/// within the (2*patch_radius+1)^2 neighborhood, clipped at the image border.
/// Invalid pixels are excluded from the neighborhood minimum; cells whose whole
/// neighborhood is invalid come out as NaN. Values are on the 0-255 scale
/// regardless of the raster's declared scale.
Grid dark_channel(const Raster& raster, int patch_radius = kDarkChannelRadius);

/// Mean of the dark channel over valid pixels, on the 0-255 scale.
/// Throws EmptyRegionError when the raster has no valid pixels.
double haze_score(const Raster& raster, int patch_radius = kDarkChannelRadius);

/// Hazy labeling convention: strictly above the threshold.
inline bool is_hazy(double score, double threshold = kHazeThreshold) {
    return score > threshold;
}

}  // namespace sage
