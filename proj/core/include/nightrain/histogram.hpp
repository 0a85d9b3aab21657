// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/image.hpp"

#include <array>
#include <cstdint>
#include <string>

namespace nightrain {

inline constexpr int kHistogramBins = 256;

/// 256-bin intensity histogram. Bin k covers [k/256, (k+1)/256); 1.0 lands in bin 255.
struct Histogram {
    std::array<std::uint64_t, kHistogramBins> bins{};
    std::string channel_label;
    std::uint64_t total = 0;
};

enum class HistogramMetric { L1, Chi2 };

/// Throws ContractError unless `plane` has exactly one channel.
Histogram histogram(const Image& plane, std::string channel_label = {});

/// L1: sum |a_k - b_k| / total.  Chi2: sum (a_k - b_k)^2 / (a_k + b_k + 1e-9).
/// Throws ContractError when the totals differ.
double histogram_distance(const Histogram& a, const Histogram& b, HistogramMetric metric);

} // namespace nightrain
