// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/image.hpp"

#include <span>

namespace nightrain {

/// Reported when the two images are identical (MSE == 0).
inline constexpr double kPsnrCapDb = 100.0;

/// Peak-1.0 PSNR with MSE taken over every channel value.
double psnr(const Image& a, const Image& b);

/// Mean structural similarity over all valid 11x11 Gaussian windows
/// (sigma 1.5, K1 0.01, K2 0.03, peak 1.0). Multi-channel inputs return the
/// mean of per-channel scores. Requires both dimensions >= 11.
double ssim(const Image& a, const Image& b);

/// Sample Pearson correlation. Returns 0 when either input has zero variance.
double pearson(std::span<const double> a, std::span<const double> b);

} // namespace nightrain
