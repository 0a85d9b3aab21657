// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/image.hpp"

#include <array>
#include <optional>
#include <string_view>

namespace nightrain::color {

/// Row-major 3x3 linear transform applied to (R, G, B) column vectors.
struct ConversionMatrix {
    std::array<std::array<double, 3>, 3> rows{};

    [[nodiscard]] double operator()(int r, int c) const { return rows[r][c]; }
    [[nodiscard]] std::array<double, 3> row_sums() const;
    [[nodiscard]] bool finite() const;
    /// Throws ContractError when the matrix is singular.
    [[nodiscard]] ConversionMatrix inverse() const;

    friend bool operator==(const ConversionMatrix&, const ConversionMatrix&) = default;
};

/// The fixed RGB -> YCbCr weights:
///   [ 0.299  0.587  0.114]
///   [-0.169 -0.331  0.5  ]
///   [ 0.5   -0.419 -0.081]
ConversionMatrix canonical_matrix();

/// BT.601 analog YUV weights (U = 0.492 (B - Y), V = 0.877 (R - Y)).
ConversionMatrix yuv_matrix();

/// Per-pixel out[c] = sum_k m[c][k] * in[k]. No clamping.
SignedImage apply_matrix(const Image& img, const ConversionMatrix& m);
SignedImage apply_matrix(const SignedImage& img, const ConversionMatrix& m);

SignedImage rgb_to_ycbcr(const Image& img);
/// Inverse of the canonical matrix, without clamping.
SignedImage ycbcr_to_rgb_unclamped(const SignedImage& ycc);
/// Inverse of the canonical matrix, clamped into [0, 1].
Image ycbcr_to_rgb(const SignedImage& ycc);

/// Hexcone HSV. H = hue angle / 360 in [0, 1), S and V in [0, 1].
/// V = max(R, G, B); S = 0 when V = 0; H = 0 when S = 0.
Image rgb_to_hsv(const Image& img);
SignedImage hsv_to_rgb(const Image& hsv);

/// HSL. H as for HSV, L = (max + min) / 2.
Image rgb_to_hsl(const Image& img);
SignedImage hsl_to_rgb(const Image& hsl);

/// Y in [0, 1], U and V signed.
SignedImage rgb_to_yuv(const Image& img);
SignedImage yuv_to_rgb(const SignedImage& yuv);

/// CIE L*a*b* from sRGB under D65. Channels are L*/100, a*/256, b*/256, so L
/// is in [0, 1] and the chroma planes stay well inside [-0.5, 0.5].
SignedImage rgb_to_lab(const Image& img);

enum class Space { RGB, YCbCr, HSV, HSL, YUV, LAB };

std::string_view space_name(Space s);
std::optional<Space> parse_space(std::string_view name);
/// Short channel label, e.g. "Y", "Cb", "V", "a".
std::string_view channel_name(Space s, int channel);
/// True for channels centered on 0 (Cb, Cr, U, V of YUV, a, b).
bool is_signed_channel(Space s, int channel);

/// Converts `img` to `space` and returns one channel. Signed channels are
/// shifted by +0.5 so that they histogram over [0, 1].
/// Throws ContractError for channel outside [0, 2] or a non-RGB input.
Image extract_channel(const Image& img, Space space, int channel);

} // namespace nightrain::color
