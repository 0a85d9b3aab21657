// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/filter.hpp"
#include "nightrain/image.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace nightrain::rain {

/// Motion-blur rain streak parameters.
///
/// Angles are measured from the image vertical; a positive angle tilts the
/// lower end of a streak towards +x.
struct StreakParams {
    int noise_count = 100;      ///< seeded noise pixels, default range [50, 200]
    int length = 30;            ///< kernel length in pixels, default range [20, 50]
    double angle_deg = 0.0;     ///< default range [-30, 30]
    double width = 5.0;         ///< streak thickness in pixels, default range [3, 7]
    double transparency = 0.6;  ///< scalar gain in (0, 1], default range [0.4, 0.9]

    friend bool operator==(const StreakParams&, const StreakParams&) = default;
};

/// Adherent raindrop parameters. `mode_amplitudes[k]` scales the cos((k+1) phi) mode.
struct DropParams {
    int count = 20;                       ///< default range [10, 60]
    double base_radius = 6.0;             ///< r0 in pixels, default range [3, 12]
    std::vector<double> mode_amplitudes;  ///< sum of |a_m| must stay below 1
    double brightness = 0.7;              ///< rim intensity in (0, 1]

    friend bool operator==(const DropParams&, const DropParams&) = default;
};

enum class MaskKind { Streak, Drop };

/// A rain layer. `binary` (drops only) is 1 where more than half of the pixel
/// lies inside some drop.
struct RainMask {
    Image plane;
    MaskKind kind = MaskKind::Streak;
    std::optional<Image> binary;
};

/// Exactly `n` distinct pixels set to uniform values in (0.5, 1], rest 0.
/// Throws ContractError for n < 0 or n > height*width.
Image gen_noise(int n, int height, int width, std::uint64_t seed);

/// length x length kernel holding a Bresenham line through the center at
/// `angle_deg` from vertical, normalized to sum 1. Requires length >= 1 and
/// |angle| <= 45.
Kernel motion_blur_kernel(int length, double angle_deg);

/// Anisotropic Gaussian with sigma = width / 3 across the streak direction and
/// half that along it. Normalized to sum 1.
Kernel streak_width_kernel(double width, double angle_deg);

/// S = clamp(t * G_w(K(l, theta) * noise(n))). Zero padded.
RainMask gen_streak_mask(const StreakParams& p, int height, int width, std::uint64_t seed);

/// r = r0 (1 + sum_m a_m cos(m phi) sin(theta_shape)).
/// Throws ContractError when sum |a_m| >= 1 or r0 <= 0.
double drop_boundary(const DropParams& p, double phi, double theta_shape);

/// One placed drop.
struct DropInstance {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 1.0;       ///< r0 after jitter
    double theta_shape = 0.0;  ///< modal phase angle fed to sin()
    double rotation = 0.0;     ///< phi offset of the shape
};

/// Rasterizes drops with 4x4 supersampling. D carries `brightness` scaled by a
/// radial profile that is dimmer in the center and brightest at the rim;
/// overlapping drops take the maximum.
RainMask render_drops(std::span<const DropInstance> drops,
                      std::span<const double> mode_amplitudes, double brightness,
                      int height, int width);

/// Seeded centers, radius jitter of +-20%, random shape phase and rotation.
std::vector<DropInstance> place_drops(const DropParams& p, int height, int width,
                                      std::uint64_t seed);

RainMask gen_drop_mask(const DropParams& p, int height, int width, std::uint64_t seed);

StreakParams sample_streak_params(std::uint64_t seed);
DropParams sample_drop_params(std::uint64_t seed);
std::variant<StreakParams, DropParams> sample_params(MaskKind kind, std::uint64_t seed);

/// Throws ContractError for out-of-domain values (negative counts, non-positive
/// length/width, transparency outside (0, 1], |angle| > 45).
void validate(const StreakParams& p);
void validate(const DropParams& p);

} // namespace nightrain::rain
