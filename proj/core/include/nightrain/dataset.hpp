// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/colorspace.hpp"
#include "nightrain/compositor.hpp"
#include "nightrain/manifest.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace nightrain::dataset {

inline constexpr const char* kManifestFile = "manifest.txt";

/// Sorted (by filename) list of *.png files directly inside `dir`.
std::vector<std::filesystem::path> list_pngs(const std::filesystem::path& dir);

struct BuildOptions {
    std::optional<std::uint64_t> seed_override;
    int threads = 1;  ///< worker count; output does not depend on it
};

/// Synthesizes one pair per background (lexicographic filename order) and
/// writes
///
///     out_dir/rainy/<name>.png
///     out_dir/clean/<name>.png
///     out_dir/manifest.txt
///
/// Entry i uses seed derive_seed(master_seed, i). Throws ValidationError for an
/// empty input directory, IoError for unreadable inputs or unwritable outputs.
DatasetManifest build_dataset(const compose::SynthesisConfig& cfg,
                              const std::filesystem::path& backgrounds_dir,
                              const std::filesystem::path& out_dir,
                              const BuildOptions& options = {});
DatasetManifest build_dataset(const std::filesystem::path& config_path,
                              const std::filesystem::path& backgrounds_dir,
                              const std::filesystem::path& out_dir,
                              const BuildOptions& options = {});

struct AnalysisRow {
    std::size_t index = 0;
    color::Space space = color::Space::YCbCr;
    int channel = 0;
    double l1 = 0.0;
    double chi2 = 0.0;
};

struct AnalysisReport {
    std::vector<AnalysisRow> rows;  ///< one per (pair, space, channel)
    std::size_t pairs = 0;
    std::size_t y_dominant_pairs = 0;  ///< L1(Y) > L1(Cb) and L1(Y) > L1(Cr)

    [[nodiscard]] double y_dominance() const {
        return pairs == 0 ? 0.0 : static_cast<double>(y_dominant_pairs) / static_cast<double>(pairs);
    }
    [[nodiscard]] std::string format() const;
};

/// Rainy-vs-clean histogram distances for every channel of each requested
/// space. The Y-dominance count is always computed from YCbCr, requested or
/// not. Throws IoError when a referenced image is missing.
AnalysisReport analyze(const std::filesystem::path& manifest_path,
                       const std::vector<color::Space>& spaces);

struct EvaluationRow {
    std::string name;
    double psnr = 0.0;
    double ssim = 0.0;
};

struct EvaluationReport {
    std::vector<EvaluationRow> rows;
    double mean_psnr = 0.0;
    double mean_ssim = 0.0;

    [[nodiscard]] std::string format() const;
};

/// PSNR/SSIM for every PNG in `pred_dir` against the same filename in
/// `gt_dir`. Throws ValidationError naming the first filename that appears in
/// only one of the directories.
EvaluationReport evaluate(const std::filesystem::path& pred_dir,
                          const std::filesystem::path& gt_dir);

inline constexpr double kGradientTolerance = 1e-4;
inline constexpr double kRecoveryTolerance = 1e-5;

struct CscReport {
    std::uint64_t seed = 0;
    int steps = 0;
    int gradient_trials = 0;
    double gradient_max_rel_error = 0.0;
    double final_mse = 0.0;

    [[nodiscard]] bool gradient_ok() const { return gradient_max_rel_error < kGradientTolerance; }
    [[nodiscard]] bool recovery_ok() const { return final_mse < kRecoveryTolerance; }
    [[nodiscard]] bool passed() const { return gradient_ok() && recovery_ok(); }
    [[nodiscard]] std::string format() const;
};

/// Analytic-vs-central-difference gradient check over 10 random converters
/// (MSE and Charbonnier), then a recovery run of `steps` gradient-descent steps.
CscReport verify_csc(std::uint64_t seed, int steps = 5000);

} // namespace nightrain::dataset
