// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/metrics.hpp"

#include "nightrain/errors.hpp"

#include <array>
#include <cmath>
#include <vector>

namespace nightrain {

namespace {

constexpr int kWindow = 11;
constexpr double kSigma = 1.5;
constexpr double kC1 = 0.01 * 0.01;
constexpr double kC2 = 0.03 * 0.03;

std::array<double, kWindow> gaussian_taps() {
    std::array<double, kWindow> taps{};
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - kWindow / 2;
        taps[static_cast<std::size_t>(i)] = std::exp(-d * d / (2.0 * kSigma * kSigma));
        sum += taps[static_cast<std::size_t>(i)];
    }
    for (double& t : taps) {
        t /= sum;
    }
    return taps;
}

// Separable 'valid' Gaussian filter: output is (h-10) x (w-10).
std::vector<double> filter_valid(const std::vector<double>& in, int h, int w,
                                 const std::array<double, kWindow>& taps) {
    const int ow = w - kWindow + 1;
    const int oh = h - kWindow + 1;
    std::vector<double> horiz(static_cast<std::size_t>(h) * static_cast<std::size_t>(ow));
    for (int y = 0; y < h; ++y) {
        const double* row = in.data() + static_cast<std::size_t>(y) * static_cast<std::size_t>(w);
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) {
                acc += taps[static_cast<std::size_t>(k)] * row[x + k];
            }
            horiz[static_cast<std::size_t>(y) * static_cast<std::size_t>(ow) + static_cast<std::size_t>(x)] = acc;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(oh) * static_cast<std::size_t>(ow));
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double acc = 0.0;
            for (int k = 0; k < kWindow; ++k) {
                acc += taps[static_cast<std::size_t>(k)] *
                       horiz[static_cast<std::size_t>(y + k) * static_cast<std::size_t>(ow) + static_cast<std::size_t>(x)];
            }
            out[static_cast<std::size_t>(y) * static_cast<std::size_t>(ow) + static_cast<std::size_t>(x)] = acc;
        }
    }
    return out;
}

double ssim_plane(std::span<const double> a, std::span<const double> b, int h, int w) {
    static const auto taps = gaussian_taps();
    const std::size_t n = a.size();
    std::vector<double> xa(a.begin(), a.end());
    std::vector<double> xb(b.begin(), b.end());
    std::vector<double> aa(n), bb(n), ab(n);
    for (std::size_t i = 0; i < n; ++i) {
        aa[i] = xa[i] * xa[i];
        bb[i] = xb[i] * xb[i];
        ab[i] = xa[i] * xb[i];
    }
    const auto mu_a = filter_valid(xa, h, w, taps);
    const auto mu_b = filter_valid(xb, h, w, taps);
    const auto e_aa = filter_valid(aa, h, w, taps);
    const auto e_bb = filter_valid(bb, h, w, taps);
    const auto e_ab = filter_valid(ab, h, w, taps);

    double sum = 0.0;
    for (std::size_t i = 0; i < mu_a.size(); ++i) {
        const double ma = mu_a[i];
        const double mb = mu_b[i];
        const double va = e_aa[i] - ma * ma;
        const double vb = e_bb[i] - mb * mb;
        const double cov = e_ab[i] - ma * mb;
        const double num = (2.0 * ma * mb + kC1) * (2.0 * cov + kC2);
        const double den = (ma * ma + mb * mb + kC1) * (va + vb + kC2);
        sum += num / den;
    }
    return sum / static_cast<double>(mu_a.size());
}

} // namespace

double psnr(const Image& a, const Image& b) {
    if (!a.same_shape(b)) {
        throw ContractError("psnr: image shapes differ");
    }
    const auto da = a.data();
    const auto db = b.data();
    if (da.empty()) {
        throw ContractError("psnr: empty images");
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < da.size(); ++i) {
        const double d = da[i] - db[i];
        acc += d * d;
    }
    const double mse = acc / static_cast<double>(da.size());
    if (mse == 0.0) {
        return kPsnrCapDb;
    }
    return 10.0 * std::log10(1.0 / mse);
}

double ssim(const Image& a, const Image& b) {
    if (!a.same_shape(b)) {
        throw ContractError("ssim: image shapes differ");
    }
    if (a.height() < kWindow || a.width() < kWindow) {
        throw ContractError("ssim: image is smaller than the 11x11 window");
    }
    double sum = 0.0;
    for (int c = 0; c < a.channels(); ++c) {
        sum += ssim_plane(a.plane(c), b.plane(c), a.height(), a.width());
    }
    return sum / a.channels();
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw ContractError("pearson: length mismatch");
    }
    if (a.empty()) {
        return 0.0;
    }
    const double n = static_cast<double>(a.size());
    double ma = 0.0;
    double mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa == 0.0 || sbb == 0.0) {
        return 0.0;
    }
    return sab / std::sqrt(saa * sbb);
}

} // namespace nightrain
