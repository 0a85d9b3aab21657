// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/image.hpp"

namespace nightrain::illum {

/// Per-pixel illumination coefficients in [0, 1].
class IlluminationMap {
public:
    IlluminationMap() = default;
    /// Adopts a single-channel plane. Throws ContractError for other channel counts.
    explicit IlluminationMap(Image plane);
    /// Uniform map, used when illumination guidance is switched off.
    static IlluminationMap constant(int height, int width, double value);

    [[nodiscard]] int height() const noexcept { return plane_.height(); }
    [[nodiscard]] int width() const noexcept { return plane_.width(); }
    [[nodiscard]] double at(int y, int x) const { return plane_.at(0, y, x); }
    [[nodiscard]] std::span<const double> values() const { return plane_.plane(0); }
    [[nodiscard]] const Image& plane() const noexcept { return plane_; }

    friend bool operator==(const IlluminationMap&, const IlluminationMap&) = default;

private:
    Image plane_;
};

/// Low/high visibility thresholds, 0 <= tau1 < tau2 <= 1.
class ThresholdPair {
public:
    /// Throws ContractError unless tau1 in [0, 1), tau2 in (tau1, 1].
    ThresholdPair(double tau1, double tau2);
    /// (0.2, 0.8).
    static ThresholdPair defaults() { return {0.2, 0.8}; }

    [[nodiscard]] double tau1() const noexcept { return tau1_; }
    [[nodiscard]] double tau2() const noexcept { return tau2_; }

    friend bool operator==(const ThresholdPair&, const ThresholdPair&) = default;

private:
    double tau1_;
    double tau2_;
};

/// Min-max normalized HSV value channel of an RGB background. A flat image
/// (max == min) keeps its V values unchanged.
IlluminationMap estimate_initial(const Image& background);

/// Halves every value with N <= tau1 or N >= tau2 (both bounds inclusive);
/// values strictly inside the band pass through.
IlluminationMap apply_threshold_mask(const IlluminationMap& n, const ThresholdPair& t);

/// estimate_initial followed by apply_threshold_mask.
IlluminationMap estimate(const Image& background, const ThresholdPair& t);

} // namespace nightrain::illum
