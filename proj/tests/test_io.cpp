#include <doctest.h>

#include <tiffio.h>

#include <filesystem>
#include <fstream>

#include "sage/image_io.hpp"
#include "sage/manifest.hpp"
#include "sage/ndvi.hpp"
#include "sage/synth.hpp"

using namespace sage;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
    const fs::path dir = fs::temp_directory_path() / "sage-io-tests";
    fs::create_directories(dir);
    return dir;
}

// Minimal float32 GeoTIFF-style writer used only to exercise the reader.
void write_float_tiff(const fs::path& path, int w, int h, int samples,
                      const std::vector<float>& data, const char* nodata_text) {
    register_geotiff_tags();
    TIFF* tif = TIFFOpen(path.string().c_str(), "w");
    REQUIRE(tif != nullptr);
    TIFFSetField(tif, TIFFTAG_IMAGEWIDTH, w);
    TIFFSetField(tif, TIFFTAG_IMAGELENGTH, h);
    TIFFSetField(tif, TIFFTAG_SAMPLESPERPIXEL, samples);
    TIFFSetField(tif, TIFFTAG_BITSPERSAMPLE, 32);
    TIFFSetField(tif, TIFFTAG_SAMPLEFORMAT, SAMPLEFORMAT_IEEEFP);
    TIFFSetField(tif, TIFFTAG_PLANARCONFIG, PLANARCONFIG_CONTIG);
    TIFFSetField(tif, TIFFTAG_PHOTOMETRIC, PHOTOMETRIC_MINISBLACK);
    if (nodata_text) TIFFSetField(tif, TIFFTAG_GDAL_NODATA, nodata_text);
    for (int y = 0; y < h; ++y)
        TIFFWriteScanline(tif, const_cast<float*>(data.data() + static_cast<size_t>(y) * w * samples),
                          y);
    TIFFClose(tif);
}

}  // namespace

TEST_CASE("16-bit PNG save/load round-trips a reflectance raster") {
    const fs::path dir = scratch_dir();
    const Raster src = render_raster(0.6, 6);
    save_raster_png16(src, dir / "rt_rgb.png", dir / "rt_nir.png");

    const Raster back = load_rgb_nir(dir / "rt_rgb.png", dir / "rt_nir.png");
    CHECK(back.width == 6);
    CHECK(back.scale == Scale::reflectance);
    CHECK(back.valid.count_true() == 36);
    CHECK(back.band("nir").at(0, 0) == doctest::Approx(0.8).epsilon(1e-4));
    CHECK(back.band("red").at(0, 0) == doctest::Approx(0.2).epsilon(1e-4));
    CHECK(mean_ndvi(back, PixelMask(6, 6, true)) == doctest::Approx(0.6).epsilon(1e-4));
}

TEST_CASE("float TIFF with a GDAL nodata tag maps nodata to the validity grid") {
    const fs::path dir = scratch_dir();
    const int w = 3, h = 2;
    // 4 bands: red, green, blue, nir; one pixel filled with the nodata value.
    std::vector<float> data(static_cast<size_t>(w) * h * 4);
    for (size_t i = 0; i < data.size(); ++i) data[i] = 0.25f;
    for (int s = 0; s < 4; ++s) data[(0 * w + 1) * 4 + s] = -9999.0f;
    write_float_tiff(dir / "nodata.tif", w, h, 4, data, "-9999");

    const Raster r = load_raster(dir / "nodata.tif");
    CHECK(r.width == w);
    CHECK(r.height == h);
    CHECK(r.scale == Scale::reflectance);
    REQUIRE(r.has_band("red"));
    REQUIRE(r.has_band("nir"));
    CHECK_FALSE(r.valid.at(1, 0));
    CHECK(r.valid.count_true() == w * h - 1);
    CHECK(r.band("red").at(0, 0) == doctest::Approx(0.25).epsilon(1e-7));
}

TEST_CASE("single-band float TIFF loads as gray") {
    const fs::path dir = scratch_dir();
    write_float_tiff(dir / "gray.tif", 2, 2, 1, {0.1f, 0.2f, 0.3f, 0.4f}, nullptr);
    const Raster r = load_raster(dir / "gray.tif");
    CHECK(r.has_band("gray"));
    CHECK(r.band("gray").at(1, 1) == doctest::Approx(0.4).epsilon(1e-7));
}

TEST_CASE("NaN samples in a float TIFF void the pixel even without a nodata tag") {
    const fs::path dir = scratch_dir();
    write_float_tiff(dir / "nan.tif", 2, 1, 1,
                     {0.5f, std::numeric_limits<float>::quiet_NaN()}, nullptr);
    const Raster r = load_raster(dir / "nan.tif");
    CHECK(r.valid.at(0, 0));
    CHECK_FALSE(r.valid.at(1, 0));
    r.check();  // no non-finite value may survive in a valid pixel
}

TEST_CASE("configured nodata value applies when no tag is present") {
    const fs::path dir = scratch_dir();
    write_float_tiff(dir / "cfg_nodata.tif", 2, 1, 1, {0.5f, 0.0f}, nullptr);
    LoadOptions opt;
    opt.nodata_value = 0.0;
    const Raster r = load_raster(dir / "cfg_nodata.tif", opt);
    CHECK(r.valid.at(0, 0));
    CHECK_FALSE(r.valid.at(1, 0));
}

TEST_CASE("band_order overrides the default naming") {
    const fs::path dir = scratch_dir();
    std::vector<float> data = {0.1f, 0.2f, 0.3f, 0.4f, 0.5f, 0.6f, 0.7f, 0.8f};
    write_float_tiff(dir / "order.tif", 2, 1, 4, data, nullptr);
    LoadOptions opt;
    opt.band_order = {"blue", "green", "red", "nir"};
    const Raster r = load_raster(dir / "order.tif", opt);
    CHECK(r.band("blue").at(0, 0) == doctest::Approx(0.1).epsilon(1e-7));
    CHECK(r.band("nir").at(0, 0) == doctest::Approx(0.4).epsilon(1e-7));
}

TEST_CASE("mask save/load round trip with nonzero-is-true semantics") {
    const fs::path dir = scratch_dir();
    PixelMask mask(4, 3, false);
    mask.set(1, 1, true);
    mask.set(3, 2, true);
    save_mask_png(mask, dir / "mask.png");
    const PixelMask back = load_mask(dir / "mask.png");
    CHECK(back.data == mask.data);
}

TEST_CASE("missing files raise io errors") {
    CHECK_THROWS_AS(load_raster("/nonexistent/file.png"), IoError);
    CHECK_THROWS_AS(parse_manifest("/nonexistent/manifest.csv"), IoError);
}

TEST_CASE("cloud sidecar naming convention") {
    CHECK(cloud_sidecar_path("data/img_001.tif") == fs::path("data/img_001.cloud.png"));
}

TEST_CASE("satellite loading picks up cloud sidecar masks") {
    const fs::path dir = scratch_dir() / "sidecar";
    fs::create_directories(dir);
    save_raster_png16(render_raster(0.4, 4), dir / "a_rgb.png", dir / "a_nir.png");
    save_raster_png16(render_raster(0.5, 4), dir / "b_rgb.png", dir / "b_nir.png");
    PixelMask cloud(4, 4, false);
    cloud.set(1, 2, true);
    save_mask_png(cloud, cloud_sidecar_path(dir / "a_rgb.png"));

    std::vector<ManifestEntry> entries;
    entries.push_back({Timestamp{Date::from_ymd(2021, 4, 1), TimeOfDay{0}}, dir / "a_rgb.png",
                       dir / "a_nir.png", SourceKind::satellite});
    entries.push_back({Timestamp{Date::from_ymd(2021, 4, 9), TimeOfDay{0}}, dir / "b_rgb.png",
                       dir / "b_nir.png", SourceKind::satellite});
    write_manifest(entries, dir / "manifest.csv");

    const auto inputs = load_satellite_inputs(dir / "manifest.csv");
    REQUIRE(inputs.size() == 2);
    REQUIRE(inputs[0].cloud.has_value());
    CHECK(inputs[0].cloud->at(1, 2));
    CHECK(inputs[0].cloud->count_true() == 1);
    CHECK_FALSE(inputs[1].cloud.has_value());
}

TEST_CASE("manifest write/parse round trip resolves relative paths") {
    const fs::path dir = scratch_dir();
    std::vector<ManifestEntry> entries;
    entries.push_back({Timestamp{Date::from_ymd(2021, 4, 1), TimeOfDay::from_hm(11, 30)},
                       dir / "a_rgb.png", dir / "a_nir.png", SourceKind::ground});
    entries.push_back({Timestamp{Date::from_ymd(2021, 4, 3), TimeOfDay{0}}, dir / "b.tif",
                       std::nullopt, SourceKind::satellite});
    write_manifest(entries, dir / "manifest.csv");

    const auto parsed = parse_manifest(dir / "manifest.csv");
    REQUIRE(parsed.size() == 2);
    CHECK(parsed[0].timestamp.time == TimeOfDay::from_hm(11, 30));
    CHECK(parsed[0].file == dir / "a_rgb.png");
    REQUIRE(parsed[0].nir_file.has_value());
    CHECK(*parsed[0].nir_file == dir / "a_nir.png");
    CHECK(parsed[1].source == SourceKind::satellite);
    CHECK_FALSE(parsed[1].nir_file.has_value());
}

TEST_CASE("manifest validation errors name the offending line") {
    const fs::path dir = scratch_dir();
    {
        std::ofstream out(dir / "bad.csv");
        out << "timestamp,file-path,nir-file-path,source\n";
        out << "not-a-date,x.png,,satellite\n";
    }
    CHECK_THROWS_WITH_AS(parse_manifest(dir / "bad.csv"), doctest::Contains("line 2"),
                         ValidationError);

    {
        std::ofstream out(dir / "badsrc.csv");
        out << "timestamp,file-path,nir-file-path,source\n";
        out << "2021-04-01,x.png,,spaceship\n";
    }
    CHECK_THROWS_AS(parse_manifest(dir / "badsrc.csv"), ValidationError);

    {
        std::ofstream out(dir / "nohdr.csv");
        out << "a,b\n";
    }
    CHECK_THROWS_AS(parse_manifest(dir / "nohdr.csv"), ValidationError);
}

TEST_CASE("series CSV round trip") {
    NdviSeries s;
    s.entries.push_back({Date::from_ymd(2021, 4, 1), 0.25});
    s.entries.push_back({Date::from_ymd(2021, 4, 2), -0.125});
    const NdviSeries back = series_from_csv(series_to_csv(s));
    REQUIRE(back.size() == 2);
    CHECK(back.entries[0].date == s.entries[0].date);
    CHECK(back.entries[0].value == s.entries[0].value);
    CHECK(back.entries[1].value == s.entries[1].value);
}

TEST_CASE("extrema CSV includes the kind column") {
    ExtremaSeries ex;
    ex.entries.push_back({Date::from_ymd(2021, 5, 1), 0.1, ExtremumKind::trough});
    ex.entries.push_back({Date::from_ymd(2021, 6, 1), 0.8, ExtremumKind::peak});
    const std::string csv = extrema_to_csv(ex);
    CHECK(csv.find("date,value,kind") == 0);
    CHECK(csv.find("trough") != std::string::npos);
    CHECK(csv.find("peak") != std::string::npos);
}
