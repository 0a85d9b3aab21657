// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/illumination.hpp"

#include "nightrain/colorspace.hpp"
#include "nightrain/errors.hpp"

#include <algorithm>
#include <vector>

namespace nightrain::illum {

IlluminationMap::IlluminationMap(Image plane) : plane_(std::move(plane)) {
    if (plane_.channels() != 1) {
        throw ContractError("illumination map must be a single-channel plane");
    }
}

IlluminationMap IlluminationMap::constant(int height, int width, double value) {
    return IlluminationMap(Image(height, width, 1, value));
}

ThresholdPair::ThresholdPair(double tau1, double tau2) : tau1_(tau1), tau2_(tau2) {
    if (!(tau1 >= 0.0 && tau1 < 1.0) || !(tau2 > tau1 && tau2 <= 1.0)) {
        throw ContractError("thresholds must satisfy 0 <= tau1 < tau2 <= 1");
    }
}

IlluminationMap estimate_initial(const Image& background) {
    const Image v = color::extract_channel(background, color::Space::HSV, 2);
    const auto values = v.plane(0);
    if (values.empty()) {
        return IlluminationMap(v);
    }
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (hi == lo) {
        return IlluminationMap(v);
    }
    std::vector<double> n(values.size());
    const double scale = hi - lo;
    std::transform(values.begin(), values.end(), n.begin(), [&](double x) { return (x - lo) / scale; });
    return IlluminationMap(Image::from_data(v.height(), v.width(), 1, std::move(n)));
}

IlluminationMap apply_threshold_mask(const IlluminationMap& n, const ThresholdPair& t) {
    const auto values = n.values();
    std::vector<double> out(values.size());
    std::transform(values.begin(), values.end(), out.begin(), [&](double v) {
        return (v <= t.tau1() || v >= t.tau2()) ? v / 2.0 : v;
    });
    return IlluminationMap(Image::from_data(n.height(), n.width(), 1, std::move(out)));
}

IlluminationMap estimate(const Image& background, const ThresholdPair& t) {
    return apply_threshold_mask(estimate_initial(background), t);
}

} // namespace nightrain::illum
