#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sage/errors.hpp"

namespace sage {

/// Scale of band values as declared by the source: reflectance in [0, 1] or
/// 8-bit intensity in [0, 255]. Intensity-based math (dark channel, PSNR,
/// SSIM) converts to the 0-255 scale internally.
enum class Scale { reflectance, eight_bit };

inline double to_intensity255(double value, Scale scale) {
    return scale == Scale::eight_bit ? value : value * 255.0;
}

/// Row-major grid of doubles. Index (x, y) with y the row.
struct Grid {
    int width = 0;
    int height = 0;
    std::vector<double> data;

    Grid() = default;
    Grid(int w, int h, double fill = 0.0)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill) {}

    double& at(int x, int y) { return data[static_cast<size_t>(y) * width + x]; }
    double at(int x, int y) const { return data[static_cast<size_t>(y) * width + x]; }
    size_t size() const { return data.size(); }
};

/// Boolean grid; true = set. Used for validity, cloud and region-of-interest masks.
struct PixelMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    PixelMask() = default;
    PixelMask(int w, int h, bool fill = false)
        : width(w), height(h), data(static_cast<size_t>(w) * h, fill ? 1 : 0) {}

    bool at(int x, int y) const { return data[static_cast<size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { data[static_cast<size_t>(y) * width + x] = v ? 1 : 0; }

    long count_true() const {
        long n = 0;
        for (auto b : data) n += (b != 0);
        return n;
    }

    bool same_shape(int w, int h) const { return width == w && height == h; }
};

/// Multi-band pixel grid with a validity mask; the unit of satellite and
/// ground imagery. Band names are lower case ("red", "green", "blue", "nir").
/// All band grids and the validity mask share the raster's dimensions.
struct Raster {
    int width = 0;
    int height = 0;
    std::map<std::string, Grid> bands;  // ordered map: deterministic iteration
    PixelMask valid;
    Scale scale = Scale::eight_bit;

    Raster() = default;
    Raster(int w, int h, Scale s = Scale::eight_bit) : width(w), height(h), valid(w, h, true), scale(s) {}

    bool has_band(const std::string& name) const { return bands.count(name) != 0; }

    Grid& add_band(const std::string& name) {
        auto [it, inserted] = bands.emplace(name, Grid(width, height));
        (void)inserted;
        return it->second;
    }

    const Grid& band(const std::string& name) const {
        const auto it = bands.find(name);
        if (it == bands.end())
            throw ValidationError("raster is missing required band '" + name + "'");
        return it->second;
    }

    bool same_shape(const Raster& other) const {
        return width == other.width && height == other.height;
    }

    /// Checks structural invariants: matching grid dimensions and finite
    /// values in valid pixels. Throws on violation.
    void check() const {
        if (!valid.same_shape(width, height))
            throw DimensionMismatchError("validity mask does not match raster dimensions");
        for (const auto& [name, grid] : bands) {
            if (grid.width != width || grid.height != height)
                throw DimensionMismatchError("band '" + name + "' does not match raster dimensions");
            for (int y = 0; y < height; ++y)
                for (int x = 0; x < width; ++x)
                    if (valid.at(x, y) && !std::isfinite(grid.at(x, y)))
                        throw ValidationError("band '" + name + "' has a non-finite value in a valid pixel");
        }
    }
};

/// Uniform fill helper used by tests and the synthetic generator.
inline Raster make_uniform_raster(int w, int h, const std::map<std::string, double>& values,
                                  Scale scale = Scale::eight_bit) {
    Raster r(w, h, scale);
    for (const auto& [name, v] : values) {
        Grid& g = r.add_band(name);
        std::fill(g.data.begin(), g.data.end(), v);
    }
    return r;
}

}  // namespace sage
