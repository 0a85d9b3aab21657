// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/compositor.hpp"

#include "nightrain/errors.hpp"
#include "nightrain/filter.hpp"
#include "nightrain/random.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace nightrain::compose {

namespace {

void require_same_dims(int h1, int w1, int h2, int w2, const char* op) {
    if (h1 != h2 || w1 != w2) {
        throw ContractError(std::string(op) + ": dimension mismatch (" + std::to_string(h1) + "x" +
                            std::to_string(w1) + " vs " + std::to_string(h2) + "x" + std::to_string(w2) + ")");
    }
}

void require_plane(const Image& rain, const char* op) {
    if (rain.channels() != 1) {
        throw ContractError(std::string(op) + ": rain layer must be single-channel");
    }
}

// clamp(B + rain) with the single rain plane added to every channel.
Image add_layer(const Image& background, std::span<const double> layer) {
    const std::size_t n = background.plane_size();
    const auto b = background.data();
    std::vector<double> out(b.begin(), b.end());
    for (int c = 0; c < background.channels(); ++c) {
        double* dst = out.data() + static_cast<std::size_t>(c) * n;
        for (std::size_t i = 0; i < n; ++i) {
            dst[i] = std::clamp(dst[i] + layer[i], 0.0, 1.0);
        }
    }
    return Image::from_data(background.height(), background.width(), background.channels(), std::move(out));
}

Image merge(const Image& background, const Image& rain, MergeMode mode) {
    return mode == MergeMode::Conv ? conv_merge(background, rain) : linear_merge(background, rain);
}

void require_rgb(const Image& b, const char* op) {
    if (b.channels() != 3) {
        throw ContractError(std::string(op) + ": background must have 3 channels");
    }
}

} // namespace

std::string_view subset_name(Subset s) {
    switch (s) {
    case Subset::RS: return "RS";
    case Subset::RD: return "RD";
    case Subset::SD: return "SD";
    }
    return "?";
}

std::optional<Subset> parse_subset(std::string_view name) {
    for (Subset s : {Subset::RS, Subset::RD, Subset::SD}) {
        if (name == subset_name(s)) {
            return s;
        }
    }
    return std::nullopt;
}

std::string_view merge_mode_name(MergeMode m) {
    return m == MergeMode::Conv ? "conv" : "linear";
}

std::optional<MergeMode> parse_merge_mode(std::string_view name) {
    if (name == "conv") {
        return MergeMode::Conv;
    }
    if (name == "linear") {
        return MergeMode::Linear;
    }
    return std::nullopt;
}

rain::StreakParams StreakOverrides::apply(rain::StreakParams p) const {
    if (noise_count) p.noise_count = *noise_count;
    if (length) p.length = *length;
    if (angle_deg) p.angle_deg = *angle_deg;
    if (width) p.width = *width;
    if (transparency) p.transparency = *transparency;
    return p;
}

rain::DropParams DropOverrides::apply(rain::DropParams p) const {
    if (count) p.count = *count;
    if (base_radius) p.base_radius = *base_radius;
    if (brightness) p.brightness = *brightness;
    return p;
}

SynthesisConfig SynthesisConfig::full(Subset kind, std::uint64_t seed) {
    SynthesisConfig cfg;
    cfg.kind = kind;
    cfg.seed = seed;
    return cfg;
}

SynthesisConfig SynthesisConfig::linear_baseline(Subset kind, std::uint64_t seed) {
    SynthesisConfig cfg;
    cfg.kind = kind;
    cfg.seed = seed;
    cfg.merge_mode = MergeMode::Linear;
    cfg.use_illumination = false;
    cfg.use_defocus = false;
    return cfg;
}

void validate(const SynthesisConfig& cfg) {
    if (cfg.defocus_radius < 0) {
        throw ContractError("defocus_radius must be >= 0");
    }
}

rain::RainMask blend_illumination(const rain::RainMask& mask, const illum::IlluminationMap& illum) {
    require_same_dims(mask.plane.height(), mask.plane.width(), illum.height(), illum.width(),
                      "blend_illumination");
    require_plane(mask.plane, "blend_illumination");
    const auto m = mask.plane.plane(0);
    const auto w = illum.values();
    std::vector<double> out(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        out[i] = m[i] * w[i];
    }
    rain::RainMask r;
    r.kind = mask.kind;
    r.binary = mask.binary;
    r.plane = Image::from_data(mask.plane.height(), mask.plane.width(), 1, std::move(out));
    return r;
}

Image conv_merge(const Image& background, const Image& rain) {
    require_same_dims(background.height(), background.width(), rain.height(), rain.width(), "conv_merge");
    require_plane(rain, "conv_merge");
    const auto smoothed = convolve(rain.plane(0), rain.height(), rain.width(), binomial3(), Border::Zero);
    return add_layer(background, smoothed);
}

Image linear_merge(const Image& background, const Image& rain) {
    require_same_dims(background.height(), background.width(), rain.height(), rain.width(), "linear_merge");
    require_plane(rain, "linear_merge");
    return add_layer(background, rain.plane(0));
}

Image defocus_blur(const Image& img, int radius) {
    if (radius < 0) {
        throw ContractError("defocus_blur: radius must be >= 0");
    }
    if (radius == 0) {
        return img;
    }
    Kernel disk;
    disk.size = 2 * radius + 1;
    disk.weights.assign(static_cast<std::size_t>(disk.size) * static_cast<std::size_t>(disk.size), 0.0);
    int count = 0;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            if (dx * dx + dy * dy <= radius * radius) {
                disk.weights[static_cast<std::size_t>((dy + radius) * disk.size + (dx + radius))] = 1.0;
                ++count;
            }
        }
    }
    for (double& w : disk.weights) {
        w /= count;
    }
    std::vector<double> out;
    out.reserve(img.data().size());
    for (int c = 0; c < img.channels(); ++c) {
        const auto p = convolve(img.plane(c), img.height(), img.width(), disk, Border::Renormalize);
        out.insert(out.end(), p.begin(), p.end());
    }
    return Image::from_data(img.height(), img.width(), img.channels(), std::move(out));
}

Image occlude(const Image& background, const Image& binary) {
    require_same_dims(background.height(), background.width(), binary.height(), binary.width(), "occlude");
    require_plane(binary, "occlude");
    const std::size_t n = background.plane_size();
    const auto m = binary.plane(0);
    const auto b = background.data();
    std::vector<double> out(b.begin(), b.end());
    for (int c = 0; c < background.channels(); ++c) {
        for (std::size_t i = 0; i < n; ++i) {
            out[static_cast<std::size_t>(c) * n + i] *= 1.0 - m[i];
        }
    }
    return Image::from_data(background.height(), background.width(), background.channels(), std::move(out));
}

illum::IlluminationMap stage_illumination(const Image& background, const SynthesisConfig& cfg) {
    if (cfg.use_illumination) {
        return illum::estimate(background, cfg.thresholds);
    }
    return illum::IlluminationMap::constant(background.height(), background.width(), 1.0);
}

SynthesisResult synthesize_streak(const Image& background, const SynthesisConfig& cfg) {
    validate(cfg);
    require_rgb(background, "synthesize_streak");
    const auto params = cfg.streak.apply(rain::sample_streak_params(derive_seed(cfg.seed, 0)));
    const auto mask = rain::gen_streak_mask(params, background.height(), background.width(),
                                            derive_seed(cfg.seed, 1));
    const auto blended = blend_illumination(mask, stage_illumination(background, cfg));

    SynthesisResult r;
    r.rainy = merge(background, blended.plane, cfg.merge_mode);
    r.clean = background;
    r.streak_params = params;
    return r;
}

SynthesisResult synthesize_drop(const Image& background, const SynthesisConfig& cfg) {
    validate(cfg);
    require_rgb(background, "synthesize_drop");
    const auto params = cfg.drop.apply(rain::sample_drop_params(derive_seed(cfg.seed, 0)));
    const auto mask = rain::gen_drop_mask(params, background.height(), background.width(),
                                          derive_seed(cfg.seed, 1));
    const auto blended = blend_illumination(mask, stage_illumination(background, cfg));
    const Image base = cfg.use_defocus ? defocus_blur(background, cfg.defocus_radius) : background;

    SynthesisResult r;
    r.rainy = merge(occlude(base, *mask.binary), blended.plane, cfg.merge_mode);
    r.clean = background;
    r.drop_params = params;
    return r;
}

SynthesisResult synthesize(const Image& background, const SynthesisConfig& cfg) {
    switch (cfg.kind) {
    case Subset::RS: return synthesize_streak(background, cfg);
    case Subset::RD: return synthesize_drop(background, cfg);
    case Subset::SD: break;
    }
    SynthesisConfig stage = cfg;
    stage.seed = derive_seed(cfg.seed, 0);
    const SynthesisResult streak = synthesize_streak(background, stage);
    stage.seed = derive_seed(cfg.seed, 1);
    SynthesisResult drop = synthesize_drop(streak.rainy, stage);
    drop.clean = background;
    drop.streak_params = streak.streak_params;
    return drop;
}

} // namespace nightrain::compose
