// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/dataset.hpp"

#include "nightrain/config.hpp"
#include "nightrain/csclab.hpp"
#include "nightrain/errors.hpp"
#include "nightrain/histogram.hpp"
#include "nightrain/metrics.hpp"
#include "nightrain/png_io.hpp"
#include "nightrain/random.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <mutex>
#include <set>
#include <thread>

namespace nightrain::dataset {

namespace fs = std::filesystem;

namespace {

std::string fmt(const char* spec, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError(dir.string() + ": cannot create output directory");
    }
}

// Runs job(i) for i in [0, n) on `threads` workers. The exception from the
// lowest failing index is rethrown, so the reported error does not depend on
// scheduling.
template <typename Job>
void parallel_for(std::size_t n, int threads, Job&& job) {
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_index = n;
    std::exception_ptr failure;
    auto run = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    if (workers == 1 || n <= 1) {
        run();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < std::min(workers, n); ++w) {
            pool.emplace_back(run);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::array<double, 3> ycbcr_l1(const Image& rainy, const Image& clean) {
    std::array<double, 3> d{};
    for (int c = 0; c < 3; ++c) {
        const auto hr = histogram(color::extract_channel(rainy, color::Space::YCbCr, c));
        const auto hc = histogram(color::extract_channel(clean, color::Space::YCbCr, c));
        d[static_cast<std::size_t>(c)] = histogram_distance(hr, hc, HistogramMetric::L1);
    }
    return d;
}

} // namespace

std::vector<fs::path> list_pngs(const fs::path& dir) {
    std::error_code ec;
    if (!fs::is_directory(dir, ec)) {
        throw IoError(dir.string() + ": not a directory");
    }
    std::vector<fs::path> out;
    for (const auto& e : fs::directory_iterator(dir, ec)) {
        if (e.is_regular_file() && e.path().extension() == ".png") {
            out.push_back(e.path());
        }
    }
    if (ec) {
        throw IoError(dir.string() + ": cannot list directory");
    }
    std::sort(out.begin(), out.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    return out;
}

DatasetManifest build_dataset(const compose::SynthesisConfig& cfg, const fs::path& backgrounds_dir,
                              const fs::path& out_dir, const BuildOptions& options) {
    compose::validate(cfg);
    const auto inputs = list_pngs(backgrounds_dir);
    if (inputs.empty()) {
        throw ValidationError(backgrounds_dir.string() + ": no PNG backgrounds found");
    }
    compose::SynthesisConfig base = cfg;
    base.seed = options.seed_override.value_or(cfg.seed);

    ensure_dir(out_dir / "rainy");
    ensure_dir(out_dir / "clean");

    DatasetManifest manifest;
    manifest.master_seed = base.seed;
    manifest.subset = base.kind;
    manifest.config = config_entries(base);
    manifest.entries.resize(inputs.size());

    parallel_for(inputs.size(), options.threads, [&](std::size_t i) {
        const fs::path& bg_path = inputs[i];
        const Image background = load_png(bg_path);
        if (background.channels() != 3) {
            throw ValidationError(bg_path.string() + ": background must be an RGB image");
        }
        compose::SynthesisConfig item = base;
        item.seed = derive_seed(base.seed, i);
        const auto result = compose::synthesize(background, item);

        const std::string name = bg_path.filename().string();
        const std::string rainy_rel = "rainy/" + name;
        const std::string clean_rel = "clean/" + name;
        save_png(result.rainy, out_dir / rainy_rel);
        save_png(result.clean, out_dir / clean_rel);

        ManifestEntry& e = manifest.entries[i];
        e.index = i;
        e.background_path = bg_path.generic_string();
        e.rainy_path = rainy_rel;
        e.clean_path = clean_rel;
        e.derived_seed = item.seed;
        e.tau1 = item.thresholds.tau1();
        e.tau2 = item.thresholds.tau2();
        e.params = flatten_params(result);
    });

    save_manifest(manifest, out_dir / kManifestFile);
    return manifest;
}

DatasetManifest build_dataset(const fs::path& config_path, const fs::path& backgrounds_dir,
                              const fs::path& out_dir, const BuildOptions& options) {
    return build_dataset(load_config(config_path), backgrounds_dir, out_dir, options);
}

std::string AnalysisReport::format() const {
    std::string out = "index\tspace\tchannel\tL1\tchi2\n";
    for (const auto& r : rows) {
        out += std::to_string(r.index) + "\t" + std::string(color::space_name(r.space)) + "\t" +
               std::string(color::channel_name(r.space, r.channel)) + "\t" + fmt("%.6f", r.l1) + "\t" +
               fmt("%.6f", r.chi2) + "\n";
    }
    out += "pairs\t" + std::to_string(pairs) + "\n";
    out += "y_dominant\t" + std::to_string(y_dominant_pairs) + "\n";
    out += "y_dominance\t" + fmt("%.4f", y_dominance()) + "\n";
    return out;
}

AnalysisReport analyze(const fs::path& manifest_path, const std::vector<color::Space>& spaces) {
    const DatasetManifest m = load_manifest(manifest_path);
    const fs::path root = manifest_path.parent_path();
    AnalysisReport report;
    for (const auto& e : m.entries) {
        const Image rainy = load_png(root / e.rainy_path);
        const Image clean = load_png(root / e.clean_path);
        if (!rainy.same_shape(clean) || rainy.channels() != 3) {
            throw ValidationError("pair " + std::to_string(e.index) + ": rainy and clean images differ in shape");
        }
        for (color::Space space : spaces) {
            for (int c = 0; c < 3; ++c) {
                const auto hr = histogram(color::extract_channel(rainy, space, c));
                const auto hc = histogram(color::extract_channel(clean, space, c));
                report.rows.push_back({e.index, space, c, histogram_distance(hr, hc, HistogramMetric::L1),
                                       histogram_distance(hr, hc, HistogramMetric::Chi2)});
            }
        }
        const auto d = ycbcr_l1(rainy, clean);
        ++report.pairs;
        if (d[0] > d[1] && d[0] > d[2]) {
            ++report.y_dominant_pairs;
        }
    }
    return report;
}

std::string EvaluationReport::format() const {
    std::string out = "image\tpsnr_db\tssim\n";
    for (const auto& r : rows) {
        out += r.name + "\t" + fmt("%.4f", r.psnr) + "\t" + fmt("%.6f", r.ssim) + "\n";
    }
    out += "mean\t" + fmt("%.4f", mean_psnr) + "\t" + fmt("%.6f", mean_ssim) + "\n";
    return out;
}

EvaluationReport evaluate(const fs::path& pred_dir, const fs::path& gt_dir) {
    const auto preds = list_pngs(pred_dir);
    const auto gts = list_pngs(gt_dir);
    std::set<std::string> pred_names;
    std::set<std::string> gt_names;
    for (const auto& p : preds) pred_names.insert(p.filename().string());
    for (const auto& p : gts) gt_names.insert(p.filename().string());
    for (const auto& n : pred_names) {
        if (!gt_names.contains(n)) {
            throw ValidationError(n + ": present in " + pred_dir.string() + " but missing from " + gt_dir.string());
        }
    }
    for (const auto& n : gt_names) {
        if (!pred_names.contains(n)) {
            throw ValidationError(n + ": present in " + gt_dir.string() + " but missing from " + pred_dir.string());
        }
    }
    if (preds.empty()) {
        throw ValidationError(pred_dir.string() + ": no PNG images found");
    }
    EvaluationReport report;
    for (const auto& p : preds) {
        const std::string name = p.filename().string();
        const Image pred = load_png(p);
        const Image gt = load_png(gt_dir / name);
        try {
            report.rows.push_back({name, psnr(pred, gt), ssim(pred, gt)});
        } catch (const ContractError& e) {
            throw ValidationError(name + ": " + e.what());
        }
        report.mean_psnr += report.rows.back().psnr;
        report.mean_ssim += report.rows.back().ssim;
    }
    report.mean_psnr /= static_cast<double>(report.rows.size());
    report.mean_ssim /= static_cast<double>(report.rows.size());
    return report;
}

std::string CscReport::format() const {
    std::string out;
    out += "seed\t" + std::to_string(seed) + "\n";
    out += "gradient_trials\t" + std::to_string(gradient_trials) + "\n";
    out += "gradient_max_rel_error\t" + fmt("%.3e", gradient_max_rel_error) + "\t(threshold 1e-4)\t" +
           (gradient_ok() ? "PASS" : "FAIL") + "\n";
    out += "steps\t" + std::to_string(steps) + "\n";
    out += "heldout_mse\t" + fmt("%.3e", final_mse) + "\t(threshold 1e-5)\t" + (recovery_ok() ? "PASS" : "FAIL") +
           "\n";
    out += std::string("status\t") + (passed() ? "PASS" : "FAIL") + "\n";
    return out;
}

CscReport verify_csc(std::uint64_t seed, int steps) {
    constexpr int kTrials = 10;
    constexpr int kBatch = 64;
    CscReport report;
    report.seed = seed;
    report.steps = steps;
    report.gradient_trials = kTrials;
    for (int t = 0; t < kTrials; ++t) {
        const auto c = csc::LearnableConverter::random(derive_seed(seed, 100 + static_cast<std::uint64_t>(t)));
        // Targets from an unrelated random matrix keep the residuals away from zero.
        Rng rng(derive_seed(seed, 200 + static_cast<std::uint64_t>(t)));
        color::ConversionMatrix target;
        for (auto& row : target.rows) {
            for (double& v : row) {
                v = rng.uniform(-1.0, 1.0);
            }
        }
        const auto batch = csc::make_batch(target, kBatch, rng.next());
        for (csc::LossKind loss : {csc::LossKind::Mse, csc::LossKind::Charbonnier}) {
            const auto analytic = csc::gradient(c, batch, loss);
            const auto numeric = csc::finite_diff_gradient(c, batch, loss, 1e-5);
            report.gradient_max_rel_error =
                std::max(report.gradient_max_rel_error, csc::max_relative_error(analytic, numeric));
        }
    }
    csc::TrainOptions options;
    options.steps = steps;
    report.final_mse = csc::train_recover(seed, options).final_mse;
    return report;
}

} // namespace nightrain::dataset
