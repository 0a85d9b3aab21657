// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

// nightrain: nighttime rain pair synthesis and analysis.
//
//   nightrain synth      --in bg.png --out dir [--config c.cfg] [--seed N] [--dump-illumination]
//   nightrain build      --config c.cfg --in backgrounds/ --out dataset/ [--seed N] [--threads N]
//   nightrain analyze    --in dataset/manifest.txt [--spaces ycbcr,hsv,lab]
//   nightrain evaluate   --in predictions/ --gt ground_truth/
//   nightrain verify-csc [--seed N] [--epochs N]
//
// Exit codes: 0 success, 1 validation error, 2 I/O error, 3 acceptance threshold failure.

#include "nightrain/colorspace.hpp"
#include "nightrain/compositor.hpp"
#include "nightrain/config.hpp"
#include "nightrain/dataset.hpp"
#include "nightrain/errors.hpp"
#include "nightrain/manifest.hpp"
#include "nightrain/png_io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

namespace fs = std::filesystem;
using namespace nightrain;

enum Exit : int { kOk = 0, kValidation = 1, kIo = 2, kThreshold = 3 };

std::vector<color::Space> parse_spaces(const std::vector<std::string>& names) {
    std::vector<color::Space> out;
    for (const auto& n : names) {
        const auto s = color::parse_space(n);
        if (!s) {
            throw ValidationError("unknown color space '" + n + "' (expected rgb, ycbcr, hsv, hsl, yuv or lab)");
        }
        out.push_back(*s);
    }
    return out;
}

int run_synth(const std::string& in, const std::string& out, const std::string& config,
              std::optional<std::uint64_t> seed, bool dump_illumination) {
    compose::SynthesisConfig cfg = config.empty() ? compose::SynthesisConfig::full(compose::Subset::RS, 0)
                                                  : load_config(config);
    if (seed) {
        cfg.seed = *seed;
    }
    const Image background = load_png(in);
    if (background.channels() != 3) {
        throw ValidationError(in + ": background must be an RGB image");
    }
    const auto result = compose::synthesize(background, cfg);
    std::error_code ec;
    fs::create_directories(out, ec);
    const std::string stem = fs::path(in).stem().string();
    save_png(result.rainy, fs::path(out) / (stem + "_rainy.png"));
    save_png(result.clean, fs::path(out) / (stem + "_clean.png"));
    if (dump_illumination) {
        save_png(compose::stage_illumination(background, cfg).plane(), fs::path(out) / (stem + "_illumination.png"));
    }
    std::cout << "seed\t" << cfg.seed << "\n";
    for (const auto& [k, v] : flatten_params(result)) {
        std::cout << k << "\t" << v << "\n";
    }
    return kOk;
}

int run_build(const std::string& config, const std::string& in, const std::string& out,
              std::optional<std::uint64_t> seed, int threads) {
    dataset::BuildOptions options;
    options.seed_override = seed;
    options.threads = threads;
    const auto manifest = dataset::build_dataset(fs::path(config), in, out, options);
    std::cout << "built " << manifest.entries.size() << " " << compose::subset_name(manifest.subset)
              << " pairs into " << out << " (master seed " << manifest.master_seed << ")\n";
    return kOk;
}

int run_analyze(const std::string& in, const std::vector<std::string>& spaces) {
    const auto report = dataset::analyze(in, parse_spaces(spaces));
    std::cout << report.format();
    return kOk;
}

int run_evaluate(const std::string& in, const std::string& gt) {
    std::cout << dataset::evaluate(in, gt).format();
    return kOk;
}

int run_verify(std::uint64_t seed, int epochs) {
    const auto report = dataset::verify_csc(seed, epochs);
    std::cout << report.format();
    return report.passed() ? kOk : kThreshold;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"nightrain: illumination-aware nighttime rain synthesis and color-space lab"};
    app.require_subcommand(1);

    std::string in;
    std::string out;
    std::string config;
    std::string gt;
    std::optional<std::uint64_t> seed;
    std::uint64_t csc_seed = 0;
    int threads = 1;
    int epochs = 5000;
    bool dump_illumination = false;
    std::vector<std::string> spaces{"ycbcr"};

    auto* synth = app.add_subcommand("synth", "Synthesize one rainy/clean pair from a background PNG");
    synth->add_option("--in", in, "Background PNG")->required();
    synth->add_option("--out", out, "Output directory")->required();
    synth->add_option("--config", config, "key = value configuration file");
    synth->add_option("--seed", seed, "Seed (overrides config)");
    synth->add_flag("--dump-illumination", dump_illumination, "Also write the illumination map as a PNG");

    auto* build = app.add_subcommand("build", "Build a dataset from a directory of backgrounds");
    build->add_option("--config", config, "key = value configuration file")->required();
    build->add_option("--in", in, "Directory of background PNGs")->required();
    build->add_option("--out", out, "Output directory")->required();
    build->add_option("--seed", seed, "Master seed (overrides config)");
    build->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    auto* analyze = app.add_subcommand("analyze", "Histogram distances between rainy and clean pairs");
    analyze->add_option("--in", in, "Dataset manifest")->required();
    analyze->add_option("--spaces", spaces, "Color spaces (rgb, ycbcr, hsv, hsl, yuv, lab)")->delimiter(',');

    auto* evaluate = app.add_subcommand("evaluate", "PSNR/SSIM of predictions against ground truth");
    evaluate->add_option("--in", in, "Prediction directory")->required();
    evaluate->add_option("--gt", gt, "Ground-truth directory")->required();

    auto* verify = app.add_subcommand("verify-csc", "Gradient check and canonical-matrix recovery run");
    verify->add_option("--seed", csc_seed, "Seed");
    verify->add_option("--epochs", epochs, "Gradient-descent steps")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kValidation;
    }

    try {
        if (*synth) return run_synth(in, out, config, seed, dump_illumination);
        if (*build) return run_build(config, in, out, seed, threads);
        if (*analyze) return run_analyze(in, spaces);
        if (*evaluate) return run_evaluate(in, gt);
        if (*verify) return run_verify(csc_seed, epochs);
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kIo;
    } catch (const TrainingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kThreshold;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kValidation;
}
