// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/illumination.hpp"
#include "nightrain/image.hpp"
#include "nightrain/rainmask.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace nightrain::compose {

/// RS: streaks only. RD: drops only. SD: streak stage, then drop stage.
enum class Subset { RS, RD, SD };
enum class MergeMode { Linear, Conv };

std::string_view subset_name(Subset s);
std::optional<Subset> parse_subset(std::string_view name);
std::string_view merge_mode_name(MergeMode m);
std::optional<MergeMode> parse_merge_mode(std::string_view name);

/// Per-field replacements for sampled streak parameters.
struct StreakOverrides {
    std::optional<int> noise_count;
    std::optional<int> length;
    std::optional<double> angle_deg;
    std::optional<double> width;
    std::optional<double> transparency;

    [[nodiscard]] rain::StreakParams apply(rain::StreakParams p) const;
    friend bool operator==(const StreakOverrides&, const StreakOverrides&) = default;
};

/// Per-field replacements for sampled drop parameters.
struct DropOverrides {
    std::optional<int> count;
    std::optional<double> base_radius;
    std::optional<double> brightness;

    [[nodiscard]] rain::DropParams apply(rain::DropParams p) const;
    friend bool operator==(const DropOverrides&, const DropOverrides&) = default;
};

/// Pipeline configuration. The four ablation switches are `merge_mode`
/// (linear addition vs. convolutional merge), `use_illumination`,
/// `use_defocus` and the subset itself.
struct SynthesisConfig {
    Subset kind = Subset::RS;
    illum::ThresholdPair thresholds = illum::ThresholdPair::defaults();
    MergeMode merge_mode = MergeMode::Conv;
    bool use_illumination = true;
    bool use_defocus = true;
    int defocus_radius = 3;
    std::uint64_t seed = 0;
    StreakOverrides streak;
    DropOverrides drop;

    /// Full pipeline: conv merge, illumination, defocus radius 3.
    static SynthesisConfig full(Subset kind, std::uint64_t seed);
    /// Linear addition, no illumination, no defocus.
    static SynthesisConfig linear_baseline(Subset kind, std::uint64_t seed);

    friend bool operator==(const SynthesisConfig&, const SynthesisConfig&) = default;
};

/// Throws ContractError for a negative defocus radius.
void validate(const SynthesisConfig& cfg);

struct SynthesisResult {
    Image rainy;
    Image clean;
    std::optional<rain::StreakParams> streak_params;
    std::optional<rain::DropParams> drop_params;
};

/// mask * I, elementwise.
rain::RainMask blend_illumination(const rain::RainMask& mask, const illum::IlluminationMap& illum);

/// clamp(B + G3(rain)) per channel, with G3 the normalized 1-2-1 kernel.
/// A zero rain plane returns `background` unchanged.
Image conv_merge(const Image& background, const Image& rain);

/// clamp(B + rain) per channel.
Image linear_merge(const Image& background, const Image& rain);

/// Normalized disk blur (x^2 + y^2 <= r^2). Border weights are renormalized
/// over the in-image support so constant images are preserved. Radius 0 is
/// the identity.
Image defocus_blur(const Image& img, int radius);

/// (1 - M) * B per channel.
Image occlude(const Image& background, const Image& binary);

/// Illumination map used by a stage: estimated from B, or all ones when
/// illumination guidance is off.
illum::IlluminationMap stage_illumination(const Image& background, const SynthesisConfig& cfg);

SynthesisResult synthesize_streak(const Image& background, const SynthesisConfig& cfg);
SynthesisResult synthesize_drop(const Image& background, const SynthesisConfig& cfg);

/// Dispatches on cfg.kind. SD runs the streak stage with seed
/// derive_seed(cfg.seed, 0), then the drop stage on its output with
/// derive_seed(cfg.seed, 1); the clean image is the original background.
SynthesisResult synthesize(const Image& background, const SynthesisConfig& cfg);

} // namespace nightrain::compose
