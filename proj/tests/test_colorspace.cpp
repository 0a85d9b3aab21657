// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/colorspace.hpp"
#include "nightrain/errors.hpp"
#include "support/test_support.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <cmath>

namespace nightrain::color {
namespace {

using testing::random_image;

Image pixel(double r, double g, double b) {
    return Image::from_data(1, 1, 3, {r, g, b});
}

std::array<double, 3> px(const SignedImage& img) {
    return {img.at(0, 0, 0), img.at(1, 0, 0), img.at(2, 0, 0)};
}

std::array<double, 3> px(const Image& img) {
    return {img.at(0, 0, 0), img.at(1, 0, 0), img.at(2, 0, 0)};
}

// Cofactor inverse, independent of the library's elimination.
std::array<std::array<double, 3>, 3> cofactor_inverse(const ConversionMatrix& m) {
    const auto& a = m.rows;
    const double det = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                       a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                       a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
    std::array<std::array<double, 3>, 3> inv{};
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            const int r0 = (c + 1) % 3;
            const int r1 = (c + 2) % 3;
            const int c0 = (r + 1) % 3;
            const int c1 = (r + 2) % 3;
            inv[r][c] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / det;
        }
    }
    return inv;
}

TEST(CanonicalMatrix, PrintedCoefficients) {
    const ConversionMatrix w = canonical_matrix();
    EXPECT_EQ(w(0, 0), 0.299);
    EXPECT_EQ(w(0, 1), 0.587);
    EXPECT_EQ(w(0, 2), 0.114);
    EXPECT_EQ(w(1, 0), -0.169);
    EXPECT_EQ(w(1, 1), -0.331);
    EXPECT_EQ(w(1, 2), 0.5);
    EXPECT_EQ(w(2, 0), 0.5);
    EXPECT_EQ(w(2, 1), -0.419);
    EXPECT_EQ(w(2, 2), -0.081);
    EXPECT_TRUE(w.finite());
}

TEST(CanonicalMatrix, RowSums) {
    EXPECT_TRUE(testing::canonical_rows_sum_exactly());
    const auto s = canonical_matrix().row_sums();
    EXPECT_NEAR(s[0], 1.0, 0x1p-51);
    EXPECT_NEAR(s[1], 0.0, 0x1p-51);
    EXPECT_NEAR(s[2], 0.0, 0x1p-51);
}

TEST(CanonicalMatrix, InverseMatchesCofactorOracle) {
    const ConversionMatrix inv = canonical_matrix().inverse();
    const auto oracle = cofactor_inverse(canonical_matrix());
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
            EXPECT_NEAR(inv(r, c), oracle[r][c], 1e-12);
        }
    }
}

TEST(CanonicalMatrix, SingularInverseIsContractError) {
    ConversionMatrix m;
    m.rows = {{{1, 2, 3}, {2, 4, 6}, {0, 0, 1}}};
    EXPECT_THROW((void)m.inverse(), ContractError);
}

TEST(ApplyMatrix, White) {
    const auto v = px(apply_matrix(pixel(1, 1, 1), canonical_matrix()));
    EXPECT_NEAR(v[0], 1.0, 1e-15);
    EXPECT_NEAR(v[1], 0.0, 1e-15);
    EXPECT_NEAR(v[2], 0.0, 1e-15);
}

TEST(ApplyMatrix, Black) {
    const auto v = px(apply_matrix(pixel(0, 0, 0), canonical_matrix()));
    EXPECT_EQ(v, (std::array<double, 3>{0, 0, 0}));
}

TEST(ApplyMatrix, PureRedIsFirstColumn) {
    const auto v = px(apply_matrix(pixel(1, 0, 0), canonical_matrix()));
    EXPECT_EQ(v[0], 0.299);
    EXPECT_EQ(v[1], -0.169);
    EXPECT_EQ(v[2], 0.5);
}

TEST(ApplyMatrix, SingleChannelIsContractError) {
    EXPECT_THROW((void)apply_matrix(Image(2, 2, 1), canonical_matrix()), ContractError);
}

TEST(ApplyMatrix, Linearity) {
    const Image x = random_image(6, 7, 3, 21);
    const Image y = random_image(6, 7, 3, 22);
    const double alpha = 0.3;
    const double beta = 0.6;
    std::vector<double> mix(x.data().size());
    for (std::size_t i = 0; i < mix.size(); ++i) {
        mix[i] = alpha * x.data()[i] + beta * y.data()[i];
    }
    const SignedImage lhs = apply_matrix(Image::from_data(6, 7, 3, mix), canonical_matrix());
    const SignedImage ax = apply_matrix(x, canonical_matrix());
    const SignedImage ay = apply_matrix(y, canonical_matrix());
    for (std::size_t i = 0; i < mix.size(); ++i) {
        EXPECT_NEAR(lhs.data()[i], alpha * ax.data()[i] + beta * ay.data()[i], 1e-6);
    }
}

TEST(YCbCr, InverseOfWhiteAndBlack) {
    const auto white = px(ycbcr_to_rgb(SignedImage::from_data(1, 1, 3, {1.0, 0.0, 0.0})));
    for (double v : white) {
        EXPECT_NEAR(v, 1.0, 1e-5);
    }
    const auto black = px(ycbcr_to_rgb(SignedImage::from_data(1, 1, 3, {0.0, 0.0, 0.0})));
    EXPECT_EQ(black, (std::array<double, 3>{0, 0, 0}));
}

TEST(YCbCr, RoundtripPreClamp) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Image x = random_image(16, 16, 3, seed);
        const SignedImage back = ycbcr_to_rgb_unclamped(rgb_to_ycbcr(x));
        for (std::size_t i = 0; i < x.data().size(); ++i) {
            ASSERT_LT(std::abs(back.data()[i] - x.data()[i]), 1e-5);
        }
    }
}

TEST(YCbCr, ClampedInverseStaysInRange) {
    const Image out = ycbcr_to_rgb(SignedImage::from_data(1, 1, 3, {1.0, 0.5, 0.5}));
    for (double v : out.data()) {
        EXPECT_GE(v, 0.0);
        EXPECT_LE(v, 1.0);
    }
}

TEST(Hsv, PrimariesAndGray) {
    const auto red = px(rgb_to_hsv(pixel(1, 0, 0)));
    EXPECT_EQ(red[0], 0.0);
    EXPECT_EQ(red[1], 1.0);
    EXPECT_EQ(red[2], 1.0);
    const auto gray = px(rgb_to_hsv(pixel(0.5, 0.5, 0.5)));
    EXPECT_EQ(gray[0], 0.0);
    EXPECT_EQ(gray[1], 0.0);
    EXPECT_EQ(gray[2], 0.5);
    EXPECT_NEAR(px(rgb_to_hsv(pixel(0, 1, 0)))[0], 120.0 / 360.0, 1e-12);
    EXPECT_NEAR(px(rgb_to_hsv(pixel(0, 0, 1)))[0], 240.0 / 360.0, 1e-12);
}

TEST(Hsv, BlackHasZeroSaturation) {
    const auto v = px(rgb_to_hsv(pixel(0, 0, 0)));
    EXPECT_EQ(v[1], 0.0);
    EXPECT_EQ(v[2], 0.0);
}

TEST(Hsv, HueStaysBelowOne) {
    // Magenta-ish red wraps close to 360 degrees.
    const auto v = px(rgb_to_hsv(pixel(1.0, 0.0, 0.001)));
    EXPECT_GE(v[0], 0.0);
    EXPECT_LT(v[0], 1.0);
}

TEST(Hsl, WhiteAndGray) {
    EXPECT_EQ(px(rgb_to_hsl(pixel(1, 1, 1)))[2], 1.0);
    const auto gray = px(rgb_to_hsl(pixel(0.3, 0.3, 0.3)));
    EXPECT_EQ(gray[1], 0.0);
    EXPECT_NEAR(gray[2], 0.3, 1e-15);
    EXPECT_NEAR(px(rgb_to_hsl(pixel(0.2, 0.9, 0.4)))[2], (0.9 + 0.2) / 2.0, 1e-15);
}

TEST(Yuv, GrayHasZeroChroma) {
    const auto v = px(rgb_to_yuv(pixel(0.5, 0.5, 0.5)));
    EXPECT_NEAR(v[0], 0.5, 1e-12);
    EXPECT_NEAR(v[1], 0.0, 1e-12);
    EXPECT_NEAR(v[2], 0.0, 1e-12);
}

TEST(Lab, BlackAndWhite) {
    const auto black = px(rgb_to_lab(pixel(0, 0, 0)));
    EXPECT_EQ(black[0], 0.0);
    const auto white = px(rgb_to_lab(pixel(1, 1, 1)));
    EXPECT_NEAR(white[0], 1.0, 1e-9);
    EXPECT_NEAR(white[1], 0.0, 1e-9);
    EXPECT_NEAR(white[2], 0.0, 1e-9);
}

TEST(Lab, MidGrayLightness) {
    // sRGB 0.5 linearizes to ((0.5 + 0.055) / 1.055)^2.4; L* = 116 f(Y) - 16.
    const double lin = std::pow((0.5 + 0.055) / 1.055, 2.4);
    const double lstar = 116.0 * std::cbrt(lin) - 16.0;
    EXPECT_NEAR(px(rgb_to_lab(pixel(0.5, 0.5, 0.5)))[0], lstar / 100.0, 1e-9);
}

class InverseRoundtrip : public ::testing::TestWithParam<int> {};

TEST_P(InverseRoundtrip, RandomImagesPreClamp) {
    const int which = GetParam();
    for (std::uint64_t seed = 100; seed < 105; ++seed) {
        const Image x = random_image(12, 12, 3, seed);
        SignedImage back;
        switch (which) {
        case 0: back = ycbcr_to_rgb_unclamped(rgb_to_ycbcr(x)); break;
        case 1: back = hsv_to_rgb(rgb_to_hsv(x)); break;
        case 2: back = hsl_to_rgb(rgb_to_hsl(x)); break;
        default: back = yuv_to_rgb(rgb_to_yuv(x)); break;
        }
        for (std::size_t i = 0; i < x.data().size(); ++i) {
            ASSERT_LT(std::abs(back.data()[i] - x.data()[i]), 1e-5) << "space " << which;
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Spaces, InverseRoundtrip, ::testing::Values(0, 1, 2, 3));

TEST(Achromatic, GrayHasNoChromaAnywhere) {
    for (double g : {0.0, 0.13, 0.5, 0.77, 1.0}) {
        const Image p = pixel(g, g, g);
        const auto ycc = px(rgb_to_ycbcr(p));
        EXPECT_NEAR(ycc[1], 0.0, 1e-12);
        EXPECT_NEAR(ycc[2], 0.0, 1e-12);
        const auto yuv = px(rgb_to_yuv(p));
        EXPECT_NEAR(yuv[1], 0.0, 1e-12);
        EXPECT_NEAR(yuv[2], 0.0, 1e-12);
        const auto lab = px(rgb_to_lab(p));
        EXPECT_NEAR(lab[1], 0.0, 1e-9);
        EXPECT_NEAR(lab[2], 0.0, 1e-9);
        EXPECT_EQ(px(rgb_to_hsv(p))[1], 0.0);
        EXPECT_EQ(px(rgb_to_hsl(p))[1], 0.0);
    }
}

TEST(ExtractChannel, Examples) {
    const Image gray(3, 3, 3, 0.7);
    const Image v_plane = extract_channel(gray, Space::HSV, 2);
    for (double v : v_plane.data()) {
        EXPECT_EQ(v, 0.7);
    }
    const Image y_plane = extract_channel(Image(3, 3, 3, 1.0), Space::YCbCr, 0);
    for (double v : y_plane.data()) {
        EXPECT_NEAR(v, 1.0, 1e-15);
    }
    const Image cb_plane = extract_channel(Image(3, 3, 3, 0.4), Space::YCbCr, 1);
    for (double v : cb_plane.data()) {
        EXPECT_NEAR(v, 0.5, 1e-12);
    }
}

TEST(ExtractChannel, InvalidIndexIsContractError) {
    EXPECT_THROW((void)extract_channel(Image(2, 2, 3), Space::YCbCr, 3), ContractError);
    EXPECT_THROW((void)extract_channel(Image(2, 2, 3), Space::HSV, -1), ContractError);
    EXPECT_THROW((void)extract_channel(Image(2, 2, 1), Space::RGB, 0), ContractError);
}

TEST(ExtractChannel, SignedChannelsStayInUnitRange) {
    const Image x = random_image(8, 8, 3, 77);
    for (Space s : {Space::YCbCr, Space::YUV, Space::LAB}) {
        for (int c = 0; c < 3; ++c) {
            const Image plane = extract_channel(x, s, c);
            const auto [lo, hi] = std::minmax_element(plane.data().begin(), plane.data().end());
            EXPECT_GT(*lo, 0.0) << space_name(s) << " " << c;
            EXPECT_LT(*hi, 1.0 + 1e-12) << space_name(s) << " " << c;
        }
    }
}

TEST(SpaceNames, ParseRoundtrip) {
    for (Space s : {Space::RGB, Space::YCbCr, Space::HSV, Space::HSL, Space::YUV, Space::LAB}) {
        EXPECT_EQ(parse_space(space_name(s)), s);
    }
    EXPECT_EQ(parse_space("ycbcr"), Space::YCbCr);
    EXPECT_FALSE(parse_space("xyz").has_value());
    EXPECT_EQ(channel_name(Space::YCbCr, 1), "Cb");
    EXPECT_TRUE(is_signed_channel(Space::LAB, 2));
    EXPECT_FALSE(is_signed_channel(Space::HSV, 0));
}

} // namespace
} // namespace nightrain::color
