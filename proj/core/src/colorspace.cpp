// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/colorspace.hpp"

#include "nightrain/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <string>
#include <vector>

namespace nightrain::color {

namespace {

using Rgb = std::array<double, 3>;

void require_rgb(int channels, const char* op) {
    if (channels != 3) {
        throw ContractError(std::string(op) + ": expected 3 channels, got " + std::to_string(channels));
    }
}

// Applies `fn` to every pixel of a 3-plane source and collects a 3-plane result.
template <typename Src, typename Fn>
std::vector<double> map_pixels(const Src& img, Fn&& fn) {
    const std::size_t n = img.plane_size();
    const auto p0 = img.plane(0);
    const auto p1 = img.plane(1);
    const auto p2 = img.plane(2);
    std::vector<double> out(3 * n);
    for (std::size_t i = 0; i < n; ++i) {
        const Rgb r = fn(Rgb{p0[i], p1[i], p2[i]});
        out[i] = r[0];
        out[n + i] = r[1];
        out[2 * n + i] = r[2];
    }
    return out;
}

Rgb mul(const ConversionMatrix& m, const Rgb& v) {
    Rgb r{};
    for (int c = 0; c < 3; ++c) {
        r[static_cast<std::size_t>(c)] = m.rows[static_cast<std::size_t>(c)][0] * v[0] +
                                         m.rows[static_cast<std::size_t>(c)][1] * v[1] +
                                         m.rows[static_cast<std::size_t>(c)][2] * v[2];
    }
    return r;
}

// Hue in [0, 1) from the hexcone; 0 for achromatic pixels.
double hue(const Rgb& p, double mx, double d) {
    if (d == 0.0) {
        return 0.0;
    }
    double h6 = 0.0;
    if (mx == p[0]) {
        h6 = (p[1] - p[2]) / d;
        if (h6 < 0.0) {
            h6 += 6.0;
        }
    } else if (mx == p[1]) {
        h6 = (p[2] - p[0]) / d + 2.0;
    } else {
        h6 = (p[0] - p[1]) / d + 4.0;
    }
    double h = h6 / 6.0;
    if (h >= 1.0) {
        h -= 1.0;
    }
    return h;
}

// RGB from hue and chroma with lightness offset m (shared by HSV and HSL).
Rgb from_hue(double h, double chroma, double m) {
    const double h6 = h * 6.0;
    const double x = chroma * (1.0 - std::abs(std::fmod(h6, 2.0) - 1.0));
    Rgb r{};
    switch (static_cast<int>(std::floor(h6)) % 6) {
    case 0: r = {chroma, x, 0.0}; break;
    case 1: r = {x, chroma, 0.0}; break;
    case 2: r = {0.0, chroma, x}; break;
    case 3: r = {0.0, x, chroma}; break;
    case 4: r = {x, 0.0, chroma}; break;
    default: r = {chroma, 0.0, x}; break;
    }
    return {r[0] + m, r[1] + m, r[2] + m};
}

constexpr ConversionMatrix kSrgbToXyz{{{
    {0.4124564, 0.3575761, 0.1804375},
    {0.2126729, 0.7151522, 0.0721750},
    {0.0193339, 0.1191920, 0.9503041},
}}};

double srgb_to_linear(double c) {
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    return t > delta * delta * delta ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

std::string lower(std::string_view s) {
    std::string r(s);
    std::transform(r.begin(), r.end(), r.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return r;
}

} // namespace

std::array<double, 3> ConversionMatrix::row_sums() const {
    return {rows[0][0] + rows[0][1] + rows[0][2], rows[1][0] + rows[1][1] + rows[1][2],
            rows[2][0] + rows[2][1] + rows[2][2]};
}

bool ConversionMatrix::finite() const {
    for (const auto& row : rows) {
        for (double v : row) {
            if (!std::isfinite(v)) {
                return false;
            }
        }
    }
    return true;
}

ConversionMatrix ConversionMatrix::inverse() const {
    const auto& m = rows;
    const double c00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const double c01 = m[1][2] * m[2][0] - m[1][0] * m[2][2];
    const double c02 = m[1][0] * m[2][1] - m[1][1] * m[2][0];
    const double det = m[0][0] * c00 + m[0][1] * c01 + m[0][2] * c02;
    if (det == 0.0 || !std::isfinite(det)) {
        throw ContractError("conversion matrix is singular");
    }
    const double inv = 1.0 / det;
    ConversionMatrix r;
    r.rows[0] = {c00 * inv, (m[0][2] * m[2][1] - m[0][1] * m[2][2]) * inv,
                 (m[0][1] * m[1][2] - m[0][2] * m[1][1]) * inv};
    r.rows[1] = {c01 * inv, (m[0][0] * m[2][2] - m[0][2] * m[2][0]) * inv,
                 (m[0][2] * m[1][0] - m[0][0] * m[1][2]) * inv};
    r.rows[2] = {c02 * inv, (m[0][1] * m[2][0] - m[0][0] * m[2][1]) * inv,
                 (m[0][0] * m[1][1] - m[0][1] * m[1][0]) * inv};
    return r;
}

ConversionMatrix canonical_matrix() {
    return ConversionMatrix{{{
        {0.299, 0.587, 0.114},
        {-0.169, -0.331, 0.5},
        {0.5, -0.419, -0.081},
    }}};
}

ConversionMatrix yuv_matrix() {
    constexpr double kr = 0.299;
    constexpr double kg = 0.587;
    constexpr double kb = 0.114;
    constexpr double su = 0.492;
    constexpr double sv = 0.877;
    return ConversionMatrix{{{
        {kr, kg, kb},
        {-su * kr, -su * kg, su * (1.0 - kb)},
        {sv * (1.0 - kr), -sv * kg, -sv * kb},
    }}};
}

SignedImage apply_matrix(const Image& img, const ConversionMatrix& m) {
    require_rgb(img.channels(), "apply_matrix");
    return SignedImage::from_data(img.height(), img.width(), 3,
                                  map_pixels(img, [&](const Rgb& p) { return mul(m, p); }));
}

SignedImage apply_matrix(const SignedImage& img, const ConversionMatrix& m) {
    require_rgb(img.channels(), "apply_matrix");
    return SignedImage::from_data(img.height(), img.width(), 3,
                                  map_pixels(img, [&](const Rgb& p) { return mul(m, p); }));
}

SignedImage rgb_to_ycbcr(const Image& img) {
    return apply_matrix(img, canonical_matrix());
}

SignedImage ycbcr_to_rgb_unclamped(const SignedImage& ycc) {
    static const ConversionMatrix inv = canonical_matrix().inverse();
    return apply_matrix(ycc, inv);
}

Image ycbcr_to_rgb(const SignedImage& ycc) {
    return ycbcr_to_rgb_unclamped(ycc).clamped();
}

Image rgb_to_hsv(const Image& img) {
    require_rgb(img.channels(), "rgb_to_hsv");
    return Image::from_data(img.height(), img.width(), 3, map_pixels(img, [](const Rgb& p) {
        const double mx = std::max({p[0], p[1], p[2]});
        const double mn = std::min({p[0], p[1], p[2]});
        const double d = mx - mn;
        const double s = mx == 0.0 ? 0.0 : d / mx;
        return Rgb{hue(p, mx, d), s, mx};
    }));
}

SignedImage hsv_to_rgb(const Image& hsv) {
    require_rgb(hsv.channels(), "hsv_to_rgb");
    return SignedImage::from_data(hsv.height(), hsv.width(), 3, map_pixels(hsv, [](const Rgb& p) {
        const double chroma = p[2] * p[1];
        return from_hue(p[0], chroma, p[2] - chroma);
    }));
}

Image rgb_to_hsl(const Image& img) {
    require_rgb(img.channels(), "rgb_to_hsl");
    return Image::from_data(img.height(), img.width(), 3, map_pixels(img, [](const Rgb& p) {
        const double mx = std::max({p[0], p[1], p[2]});
        const double mn = std::min({p[0], p[1], p[2]});
        const double d = mx - mn;
        const double l = (mx + mn) / 2.0;
        const double denom = 1.0 - std::abs(2.0 * l - 1.0);
        const double s = (d == 0.0 || denom <= 0.0) ? 0.0 : std::min(1.0, d / denom);
        return Rgb{hue(p, mx, d), s, l};
    }));
}

SignedImage hsl_to_rgb(const Image& hsl) {
    require_rgb(hsl.channels(), "hsl_to_rgb");
    return SignedImage::from_data(hsl.height(), hsl.width(), 3, map_pixels(hsl, [](const Rgb& p) {
        const double chroma = (1.0 - std::abs(2.0 * p[2] - 1.0)) * p[1];
        return from_hue(p[0], chroma, p[2] - chroma / 2.0);
    }));
}

SignedImage rgb_to_yuv(const Image& img) {
    return apply_matrix(img, yuv_matrix());
}

SignedImage yuv_to_rgb(const SignedImage& yuv) {
    static const ConversionMatrix inv = yuv_matrix().inverse();
    return apply_matrix(yuv, inv);
}

SignedImage rgb_to_lab(const Image& img) {
    require_rgb(img.channels(), "rgb_to_lab");
    // White point from the matrix row sums keeps gray exactly on the L axis.
    static const auto white = kSrgbToXyz.row_sums();
    return SignedImage::from_data(img.height(), img.width(), 3, map_pixels(img, [](const Rgb& p) {
        const Rgb lin{srgb_to_linear(p[0]), srgb_to_linear(p[1]), srgb_to_linear(p[2])};
        const Rgb xyz = mul(kSrgbToXyz, lin);
        const double fx = lab_f(xyz[0] / white[0]);
        const double fy = lab_f(xyz[1] / white[1]);
        const double fz = lab_f(xyz[2] / white[2]);
        const double l = 116.0 * fy - 16.0;
        const double a = 500.0 * (fx - fy);
        const double b = 200.0 * (fy - fz);
        return Rgb{l / 100.0, a / 256.0, b / 256.0};
    }));
}

std::string_view space_name(Space s) {
    switch (s) {
    case Space::RGB: return "rgb";
    case Space::YCbCr: return "ycbcr";
    case Space::HSV: return "hsv";
    case Space::HSL: return "hsl";
    case Space::YUV: return "yuv";
    case Space::LAB: return "lab";
    }
    return "unknown";
}

std::optional<Space> parse_space(std::string_view name) {
    const std::string n = lower(name);
    for (Space s : {Space::RGB, Space::YCbCr, Space::HSV, Space::HSL, Space::YUV, Space::LAB}) {
        if (n == space_name(s)) {
            return s;
        }
    }
    return std::nullopt;
}

std::string_view channel_name(Space s, int channel) {
    static constexpr std::string_view names[6][3] = {
        {"R", "G", "B"}, {"Y", "Cb", "Cr"}, {"H", "S", "V"},
        {"H", "S", "L"}, {"Y", "U", "V"},   {"L", "a", "b"},
    };
    if (channel < 0 || channel > 2) {
        throw ContractError("channel index must be 0, 1 or 2");
    }
    return names[static_cast<int>(s)][channel];
}

bool is_signed_channel(Space s, int channel) {
    return channel > 0 && (s == Space::YCbCr || s == Space::YUV || s == Space::LAB);
}

Image extract_channel(const Image& img, Space space, int channel) {
    if (channel < 0 || channel > 2) {
        throw ContractError("extract_channel: channel index " + std::to_string(channel) +
                            " is invalid for " + std::string(space_name(space)));
    }
    require_rgb(img.channels(), "extract_channel");
    SignedImage converted;
    switch (space) {
    case Space::RGB: converted = SignedImage::from_image(img); break;
    case Space::YCbCr: converted = rgb_to_ycbcr(img); break;
    case Space::HSV: converted = SignedImage::from_image(rgb_to_hsv(img)); break;
    case Space::HSL: converted = SignedImage::from_image(rgb_to_hsl(img)); break;
    case Space::YUV: converted = rgb_to_yuv(img); break;
    case Space::LAB: converted = rgb_to_lab(img); break;
    }
    const auto p = converted.plane(channel);
    std::vector<double> out(p.begin(), p.end());
    if (is_signed_channel(space, channel)) {
        for (double& v : out) {
            v += 0.5;
        }
    }
    return Image::from_data(img.height(), img.width(), 1, std::move(out));
}

} // namespace nightrain::color
