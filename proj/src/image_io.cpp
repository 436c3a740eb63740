#include "sage/image_io.hpp"

#include <tiffio.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <opencv2/imgcodecs.hpp>

namespace sage {

namespace fs = std::filesystem;

namespace {

bool is_tiff(const fs::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
    return ext == ".tif" || ext == ".tiff";
}

std::vector<std::string> band_names(size_t count, const LoadOptions& options) {
    if (options.band_order.size() == count) return options.band_order;
    if (count == 1) return {"gray"};
    if (count == 3) return {"red", "green", "blue"};
    if (count == 4) return {"red", "green", "blue", "nir"};
    std::vector<std::string> names;
    for (size_t i = 0; i < count; ++i) names.push_back("band" + std::to_string(i + 1));
    return names;
}

void apply_nodata(Raster& raster, double nodata) {
    for (int y = 0; y < raster.height; ++y) {
        for (int x = 0; x < raster.width; ++x) {
            for (const auto& [name, g] : raster.bands) {
                (void)name;
                const double v = g.at(x, y);
                if (v == nodata || !std::isfinite(v)) {
                    raster.valid.set(x, y, false);
                    break;
                }
            }
        }
    }
}

struct TiffCloser {
    void operator()(TIFF* t) const {
        if (t) TIFFClose(t);
    }
};
using TiffHandle = std::unique_ptr<TIFF, TiffCloser>;

TIFFExtendProc g_parent_extender = nullptr;

void tag_extender(TIFF* tif) {
    static const TIFFFieldInfo kGdalNodataField = {
        TIFFTAG_GDAL_NODATA, -1, -1, TIFF_ASCII, FIELD_CUSTOM, 1, 0,
        const_cast<char*>("GDALNoDataValue")};
    TIFFMergeFieldInfo(tif, &kGdalNodataField, 1);
    if (g_parent_extender) g_parent_extender(tif);
}

// Converts one raw sample to double on the grid's declared scale.
double decode_sample(const void* row, size_t index, uint16_t bits, uint16_t format) {
    if (format == SAMPLEFORMAT_IEEEFP) {
        if (bits == 32) return static_cast<const float*>(row)[index];
        if (bits == 64) return static_cast<const double*>(row)[index];
    } else if (format == SAMPLEFORMAT_UINT || format == 0) {
        if (bits == 8) return static_cast<const uint8_t*>(row)[index];
        if (bits == 16) return static_cast<const uint16_t*>(row)[index] / 65535.0;
        if (bits == 32) return static_cast<const uint32_t*>(row)[index];
    } else if (format == SAMPLEFORMAT_INT) {
        if (bits == 16) return static_cast<const int16_t*>(row)[index];
        if (bits == 32) return static_cast<const int32_t*>(row)[index];
    }
    throw IoError("unsupported TIFF sample layout: bits=" + std::to_string(bits) +
                  " format=" + std::to_string(format));
}

Raster load_tiff(const fs::path& path, const LoadOptions& options) {
    register_geotiff_tags();
    TiffHandle tif(TIFFOpen(path.string().c_str(), "r"));
    if (!tif) throw IoError("cannot open TIFF file " + path.string());

    uint32_t width = 0, height = 0;
    uint16_t samples = 1, bits = 8, format = SAMPLEFORMAT_UINT, planar = PLANARCONFIG_CONTIG;
    TIFFGetField(tif.get(), TIFFTAG_IMAGEWIDTH, &width);
    TIFFGetField(tif.get(), TIFFTAG_IMAGELENGTH, &height);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLESPERPIXEL, &samples);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_BITSPERSAMPLE, &bits);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_SAMPLEFORMAT, &format);
    TIFFGetFieldDefaulted(tif.get(), TIFFTAG_PLANARCONFIG, &planar);
    if (width == 0 || height == 0) throw IoError("TIFF has zero dimensions: " + path.string());

    const Scale scale = (format == SAMPLEFORMAT_IEEEFP) ? options.float_scale
                        : (bits == 8)                   ? Scale::eight_bit
                                                        : Scale::reflectance;

    Raster raster(static_cast<int>(width), static_cast<int>(height), scale);
    const auto names = band_names(samples, options);
    std::vector<Grid*> grids;
    for (const auto& n : names) grids.push_back(&raster.add_band(n));

    if (TIFFIsTiled(tif.get())) {
        uint32_t tw = 0, th = 0;
        TIFFGetField(tif.get(), TIFFTAG_TILEWIDTH, &tw);
        TIFFGetField(tif.get(), TIFFTAG_TILELENGTH, &th);
        std::vector<uint8_t> tile(TIFFTileSize(tif.get()));
        const int planes = (planar == PLANARCONFIG_SEPARATE) ? samples : 1;
        for (int plane = 0; plane < planes; ++plane) {
            for (uint32_t ty = 0; ty < height; ty += th) {
                for (uint32_t tx = 0; tx < width; tx += tw) {
                    if (TIFFReadTile(tif.get(), tile.data(), tx, ty, 0,
                                     static_cast<uint16_t>(plane)) < 0)
                        throw IoError("failed to read TIFF tile in " + path.string());
                    const int per_pixel = (planar == PLANARCONFIG_CONTIG) ? samples : 1;
                    for (uint32_t y = ty; y < std::min(ty + th, height); ++y) {
                        const uint8_t* row = tile.data() + static_cast<size_t>(y - ty) * tw *
                                                               per_pixel * (bits / 8);
                        for (uint32_t x = tx; x < std::min(tx + tw, width); ++x) {
                            const size_t base = static_cast<size_t>(x - tx) * per_pixel;
                            if (planar == PLANARCONFIG_CONTIG) {
                                for (int s = 0; s < samples; ++s)
                                    grids[s]->at(x, y) = decode_sample(row, base + s, bits, format);
                            } else {
                                grids[plane]->at(x, y) = decode_sample(row, base, bits, format);
                            }
                        }
                    }
                }
            }
        }
    } else {
        std::vector<uint8_t> row(TIFFScanlineSize(tif.get()));
        if (planar == PLANARCONFIG_CONTIG) {
            for (uint32_t y = 0; y < height; ++y) {
                if (TIFFReadScanline(tif.get(), row.data(), y) < 0)
                    throw IoError("failed to read TIFF scanline in " + path.string());
                for (uint32_t x = 0; x < width; ++x)
                    for (int s = 0; s < samples; ++s)
                        grids[s]->at(x, y) =
                            decode_sample(row.data(), static_cast<size_t>(x) * samples + s, bits,
                                          format);
            }
        } else {
            for (int s = 0; s < samples; ++s) {
                for (uint32_t y = 0; y < height; ++y) {
                    if (TIFFReadScanline(tif.get(), row.data(), y, static_cast<uint16_t>(s)) < 0)
                        throw IoError("failed to read TIFF scanline in " + path.string());
                    for (uint32_t x = 0; x < width; ++x)
                        grids[s]->at(x, y) = decode_sample(row.data(), x, bits, format);
                }
            }
        }
    }

    // The GDAL nodata tag wins over a configured nodata value.
    char* nodata_text = nullptr;
    std::optional<double> nodata = options.nodata_value;
    if (TIFFGetField(tif.get(), TIFFTAG_GDAL_NODATA, &nodata_text) && nodata_text) {
        try {
            nodata = std::stod(nodata_text);
        } catch (const std::exception&) {
            throw IoError("unparseable GDAL nodata tag '" + std::string(nodata_text) + "' in " +
                          path.string());
        }
        // The tag applies to raw sample values; 16-bit samples were rescaled.
        if (format != SAMPLEFORMAT_IEEEFP && bits == 16) *nodata /= 65535.0;
    }
    if (nodata) {
        apply_nodata(raster, *nodata);
    } else if (format == SAMPLEFORMAT_IEEEFP) {
        // NaN samples without a declared nodata still void the pixel.
        apply_nodata(raster, std::numeric_limits<double>::quiet_NaN());
    }
    return raster;
}

Raster from_mat(const cv::Mat& img, const fs::path& path) {
    if (img.empty()) throw IoError("cannot decode image " + path.string());
    const int ch = img.channels();
    if (ch != 1 && ch != 3 && ch != 4)
        throw IoError("unsupported channel count " + std::to_string(ch) + " in " + path.string());

    double divisor = 1.0;
    Scale scale = Scale::eight_bit;
    switch (img.depth()) {
        case CV_8U: break;
        case CV_16U:
            divisor = 65535.0;
            scale = Scale::reflectance;
            break;
        default:
            throw IoError("unsupported bit depth in " + path.string());
    }

    Raster raster(img.cols, img.rows, scale);
    // OpenCV returns color images in BGR(A) order.
    std::vector<std::string> names;
    if (ch == 1)
        names = {"gray"};
    else
        names = {"blue", "green", "red", "alpha"};

    std::vector<Grid*> grids;
    for (int s = 0; s < std::min(ch, 3); ++s) grids.push_back(&raster.add_band(names[s]));
    Grid alpha;
    if (ch == 4) alpha = Grid(img.cols, img.rows);

    for (int y = 0; y < img.rows; ++y) {
        for (int x = 0; x < img.cols; ++x) {
            for (int s = 0; s < ch; ++s) {
                double v = 0.0;
                if (img.depth() == CV_8U)
                    v = img.ptr<uint8_t>(y)[static_cast<size_t>(x) * ch + s];
                else
                    v = img.ptr<uint16_t>(y)[static_cast<size_t>(x) * ch + s] / divisor;
                if (s < 3)
                    grids[s]->at(x, y) = v;
                else
                    alpha.at(x, y) = v;
            }
        }
    }
    if (ch == 4) {
        for (int y = 0; y < img.rows; ++y)
            for (int x = 0; x < img.cols; ++x)
                if (alpha.at(x, y) == 0.0) raster.valid.set(x, y, false);
    }
    return raster;
}

}  // namespace

Raster load_raster(const fs::path& path, const LoadOptions& options) {
    if (!fs::exists(path)) throw IoError("raster file does not exist: " + path.string());
    if (is_tiff(path)) return load_tiff(path, options);
    const cv::Mat img = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    Raster raster = from_mat(img, path);
    if (options.nodata_value) apply_nodata(raster, *options.nodata_value);
    return raster;
}

Raster load_rgb_nir(const fs::path& rgb_path, const fs::path& nir_path,
                    const LoadOptions& options) {
    Raster rgb = load_raster(rgb_path, options);
    Raster nir = load_raster(nir_path, options);
    if (!rgb.same_shape(nir))
        throw DimensionMismatchError("RGB and NIR images differ in size: " + rgb_path.string() +
                                     " vs " + nir_path.string());
    if (rgb.scale != nir.scale)
        throw ValidationError("RGB and NIR images have different bit depths: " +
                              rgb_path.string() + " vs " + nir_path.string());

    const Grid* nir_grid = nullptr;
    if (nir.has_band("gray"))
        nir_grid = &nir.band("gray");
    else if (nir.has_band("nir"))
        nir_grid = &nir.band("nir");
    else
        throw ValidationError("NIR image must be single-band: " + nir_path.string());

    rgb.add_band("nir") = *nir_grid;
    for (int y = 0; y < rgb.height; ++y)
        for (int x = 0; x < rgb.width; ++x)
            if (!nir.valid.at(x, y)) rgb.valid.set(x, y, false);
    return rgb;
}

PixelMask load_mask(const fs::path& path) {
    const Raster raster = load_raster(path);
    const Grid* g = nullptr;
    if (raster.has_band("gray"))
        g = &raster.band("gray");
    else
        g = &raster.band("red");  // tolerate RGB-encoded masks; red carries the signal
    PixelMask mask(raster.width, raster.height, false);
    for (int y = 0; y < raster.height; ++y)
        for (int x = 0; x < raster.width; ++x) mask.set(x, y, g->at(x, y) != 0.0);
    return mask;
}

void save_raster_png16(const Raster& raster, const fs::path& rgb_path, const fs::path& nir_path) {
    if (raster.scale != Scale::reflectance)
        throw ValidationError("save_raster_png16 expects a reflectance raster");
    const auto encode = [](double v) {
        return static_cast<uint16_t>(std::lround(std::clamp(v, 0.0, 1.0) * 65535.0));
    };
    const Grid& r = raster.band("red");
    const Grid& g = raster.band("green");
    const Grid& b = raster.band("blue");
    const Grid& n = raster.band("nir");

    cv::Mat rgb(raster.height, raster.width, CV_16UC3);
    cv::Mat nir(raster.height, raster.width, CV_16UC1);
    for (int y = 0; y < raster.height; ++y) {
        for (int x = 0; x < raster.width; ++x) {
            auto& px = rgb.at<cv::Vec3w>(y, x);
            px[0] = encode(b.at(x, y));  // BGR for OpenCV
            px[1] = encode(g.at(x, y));
            px[2] = encode(r.at(x, y));
            nir.at<uint16_t>(y, x) = encode(n.at(x, y));
        }
    }
    if (!cv::imwrite(rgb_path.string(), rgb))
        throw IoError("failed to write " + rgb_path.string());
    if (!cv::imwrite(nir_path.string(), nir))
        throw IoError("failed to write " + nir_path.string());
}

void save_mask_png(const PixelMask& mask, const fs::path& path) {
    cv::Mat img(mask.height, mask.width, CV_8UC1);
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            img.at<uint8_t>(y, x) = mask.at(x, y) ? 255 : 0;
    if (!cv::imwrite(path.string(), img)) throw IoError("failed to write " + path.string());
}

fs::path cloud_sidecar_path(const fs::path& raster_path) {
    fs::path p = raster_path;
    p.replace_extension();
    p += ".cloud.png";
    return p;
}

void register_geotiff_tags() {
    static const bool once = [] {
        g_parent_extender = TIFFSetTagExtender(tag_extender);
        return true;
    }();
    (void)once;
}

}  // namespace sage
