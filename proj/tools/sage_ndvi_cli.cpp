// Command-line front end: evaluate, compare, synth and inspect-series.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sage/config.hpp"
#include "sage/dataset.hpp"
#include "sage/image_io.hpp"
#include "sage/pipeline.hpp"
#include "sage/quality.hpp"
#include "sage/report_io.hpp"

namespace fs = std::filesystem;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", v);
    return buf;
}

int cmd_evaluate(const std::string& config_path, const std::optional<double>& h_override,
                 const std::optional<std::string>& out_override) {
    sage::RunConfig cfg = sage::parse_run_config(config_path);
    if (h_override) {
        if (*h_override <= 0.0) throw sage::ValidationError("--h must be > 0");
        cfg.params.threshold_h = *h_override;
    }
    if (out_override) cfg.output_dir = *out_override;

    const sage::SageReport report = sage::evaluate(cfg);
    sage::write_report_files(report, cfg.site, cfg.output_dir);
    std::cout << "SAGE-NDVI e=" << fmt(report.e_bar) << " e_phi=" << fmt(report.e_phi_bar)
              << " k=" << report.k << "\n";
    return 0;
}

int cmd_compare(const std::string& hazy_path, const std::vector<std::string>& dehazed_paths,
                const std::string& reference_path, const std::optional<std::string>& out_path,
                int window) {
    const sage::LoadOptions options;
    const sage::Raster reference = sage::load_raster(reference_path, options);
    const sage::Raster hazy = sage::load_raster(hazy_path, options);

    std::string csv = "input,role,psnr_db,ssim\n";
    const auto add_row = [&](const fs::path& p, const char* role, const sage::Raster& img) {
        const double ps = sage::psnr(img, reference);
        const double ss = sage::ssim(img, reference, window);
        csv += p.filename().string();
        csv += ",";
        csv += role;
        csv += "," + (std::isinf(ps) ? std::string("inf") : fmt(ps)) + "," + fmt(ss) + "\n";
    };
    add_row(hazy_path, "hazy", hazy);
    for (const auto& d : dehazed_paths) add_row(d, "dehazed", sage::load_raster(d, options));

    std::cout << csv;
    if (out_path) sage::atomic_write(*out_path, csv);
    return 0;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir) {
    const sage::PhenologyScenario scenario = sage::scenario_from_file(spec_path);
    const fs::path config = sage::write_synthetic_dataset(scenario, out_dir);
    std::cout << "dataset written; evaluate with: config " << config.string() << "\n";
    return 0;
}

int cmd_inspect_series(const std::string& config_path) {
    const sage::RunConfig cfg = sage::parse_run_config(config_path);
    const sage::SageReport report = sage::evaluate(cfg);

    std::cout << "u (hazy satellite NDVI, normalized by u_phi params):\n";
    for (size_t i = 0; i < report.u_norm.size(); ++i) {
        const auto& e = report.u_norm.entries[i];
        std::cout << "  " << e.date.to_string() << "  raw=" << fmt(report.u_raw.entries[i].value)
                  << "  norm=" << fmt(e.value)
                  << (report.per_timestamp[i].significant ? "  [significant]" : "") << "\n";
    }
    std::cout << "u_phi (dehazed satellite NDVI):\n";
    for (size_t i = 0; i < report.u_phi_norm.size(); ++i) {
        const auto& e = report.u_phi_norm.entries[i];
        std::cout << "  " << e.date.to_string() << "  raw="
                  << fmt(report.u_phi_raw.entries[i].value) << "  norm=" << fmt(e.value) << "\n";
    }
    std::cout << "v (ground extrema):\n";
    for (size_t i = 0; i < report.v_raw.entries.size(); ++i) {
        const auto& e = report.v_raw.entries[i];
        std::cout << "  " << e.date.to_string() << "  raw=" << fmt(e.value)
                  << "  norm=" << fmt(report.v_norm[i])
                  << (e.kind == sage::ExtremumKind::peak ? "  peak" : "  trough") << "\n";
    }
    std::cout << "SAGE-NDVI e=" << fmt(report.e_bar) << " e_phi=" << fmt(report.e_phi_bar)
              << " k=" << report.k << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"SAGE-NDVI: satellite-to-ground NDVI error metric for dehazing evaluation"};
    app.require_subcommand(1);
    // "--h" is a science flag here, so the help flag loses its short form.
    app.set_help_flag("--help", "Print help and exit");

    auto* evaluate = app.add_subcommand("evaluate", "Run the metric from a config file");
    evaluate->set_help_flag("--help", "Print help and exit");
    std::string eval_config;
    std::optional<double> h_override;
    std::optional<std::string> out_override;
    evaluate->add_option("--config", eval_config, "Run config (JSON)")->required();
    evaluate->add_option("--h", h_override, "Override the significance threshold h");
    evaluate->add_option("--out", out_override, "Override the output directory");

    auto* compare = app.add_subcommand("compare", "PSNR/SSIM of dehazed images vs a reference");
    std::string cmp_hazy, cmp_reference;
    std::vector<std::string> cmp_dehazed;
    std::optional<std::string> cmp_out;
    int cmp_window = 11;
    compare->add_option("--hazy", cmp_hazy, "Hazy input image")->required();
    compare->add_option("--reference", cmp_reference, "Clear reference image")->required();
    compare->add_option("--dehazed", cmp_dehazed, "Dehazed image (repeatable)")->required();
    compare->add_option("--out", cmp_out, "Write the CSV table here as well");
    compare->add_option("--window", cmp_window, "SSIM window size (odd, >= 3)");

    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset from a scenario spec");
    std::string synth_spec, synth_out;
    synth->add_option("--spec", synth_spec, "Scenario spec (JSON)")->required();
    synth->add_option("--out", synth_out, "Output dataset directory")->required();

    auto* inspect = app.add_subcommand("inspect-series",
                                       "Print u, u_phi and v with extrema annotations");
    std::string inspect_config;
    inspect->add_option("--config", inspect_config, "Run config (JSON)")->required();

    try {
        app.parse(argc, argv);
        if (evaluate->parsed()) return cmd_evaluate(eval_config, h_override, out_override);
        if (compare->parsed())
            return cmd_compare(cmp_hazy, cmp_dehazed, cmp_reference, cmp_out, cmp_window);
        if (synth->parsed()) return cmd_synth(synth_spec, synth_out);
        if (inspect->parsed()) return cmd_inspect_series(inspect_config);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : sage::exit_code(sage::ErrorCode::validation);
    } catch (const sage::SageError& e) {
        std::cerr << "error (" << sage::error_name(e.code()) << "): " << e.what() << "\n";
        return sage::exit_code(e.code());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return sage::exit_code(sage::ErrorCode::internal);
    }
    return 0;
}
