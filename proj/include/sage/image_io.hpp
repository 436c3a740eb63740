#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sage/raster.hpp"

namespace sage {

/// Options applied when decoding image files into rasters.
struct LoadOptions {
    /// Scale assumed for floating-point TIFF samples (integer depths imply
    /// their own scale: 8-bit data stays on 0-255, 16-bit is divided down to
    /// reflectance).
    Scale float_scale = Scale::reflectance;
    /// Pixels where any band equals this value become invalid. A GDAL nodata
    /// tag in a GeoTIFF takes precedence when present.
    std::optional<double> nodata_value;
    /// Band names for multi-band TIFFs, in file order. Defaults to
    /// red,green,blue[,nir] for 3- and 4-band files.
    std::vector<std::string> band_order;
};

/// Loads a raster from GeoTIFF (multi-band, nodata-aware) or PNG/JPEG
/// (8- or 16-bit; an alpha channel maps to the validity grid).
Raster load_raster(const std::filesystem::path& path, const LoadOptions& options = {});

/// Loads a ground-camera pair: an RGB image plus a single-band NIR image,
/// merged into one four-band raster. Dimensions must match.
Raster load_rgb_nir(const std::filesystem::path& rgb_path,
                    const std::filesystem::path& nir_path, const LoadOptions& options = {});

/// Loads a single-band image as a mask: nonzero = true.
PixelMask load_mask(const std::filesystem::path& path);

/// Writes a reflectance raster as a 16-bit RGB PNG plus a 16-bit NIR PNG.
void save_raster_png16(const Raster& raster, const std::filesystem::path& rgb_path,
                       const std::filesystem::path& nir_path);

/// Writes a mask as an 8-bit PNG (255 = true).
void save_mask_png(const PixelMask& mask, const std::filesystem::path& path);

/// The cloud-mask sidecar convention: the raster path with its extension
/// replaced by ".cloud.png".
std::filesystem::path cloud_sidecar_path(const std::filesystem::path& raster_path);

/// Registers the GDAL nodata TIFF tag with libtiff (idempotent, process-wide).
/// The raster loader calls this itself; writers of tagged TIFFs need it too.
void register_geotiff_tags();

}  // namespace sage
