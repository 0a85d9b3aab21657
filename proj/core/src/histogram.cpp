// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/histogram.hpp"

#include "nightrain/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace nightrain {

Histogram histogram(const Image& plane, std::string channel_label) {
    if (plane.channels() != 1) {
        throw ContractError("histogram requires a single-channel plane");
    }
    Histogram h;
    h.channel_label = std::move(channel_label);
    for (double v : plane.data()) {
        const auto bin = std::min(kHistogramBins - 1, static_cast<int>(std::floor(v * kHistogramBins)));
        ++h.bins[static_cast<std::size_t>(bin)];
    }
    h.total = plane.plane_size();
    return h;
}

double histogram_distance(const Histogram& a, const Histogram& b, HistogramMetric metric) {
    if (a.total != b.total) {
        throw ContractError("histogram totals differ: " + std::to_string(a.total) + " vs " +
                            std::to_string(b.total));
    }
    constexpr double kEps = 1e-9;
    double acc = 0.0;
    for (std::size_t k = 0; k < a.bins.size(); ++k) {
        const double ak = static_cast<double>(a.bins[k]);
        const double bk = static_cast<double>(b.bins[k]);
        const double d = ak - bk;
        if (metric == HistogramMetric::L1) {
            acc += std::abs(d);
        } else {
            acc += d * d / (ak + bk + kEps);
        }
    }
    if (metric == HistogramMetric::L1) {
        return a.total == 0 ? 0.0 : acc / static_cast<double>(a.total);
    }
    return acc;
}

} // namespace nightrain
