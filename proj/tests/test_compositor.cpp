// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/compositor.hpp"
#include "nightrain/errors.hpp"
#include "nightrain/random.hpp"
#include "support/test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace nightrain::compose {
namespace {

using testing::night_background;
using testing::random_image;

Image impulse(int size, double value) {
    Image img(size, size, 1, 0.0);
    img.set(0, size / 2, size / 2, value);
    return img;
}

rain::RainMask plane_mask(const Image& plane) {
    rain::RainMask m;
    m.plane = plane;
    return m;
}

TEST(BlendIllumination, Examples) {
    const Image mask(4, 4, 1, 0.6);
    const auto zero = blend_illumination(plane_mask(mask), illum::IlluminationMap::constant(4, 4, 0.0));
    for (double v : zero.plane.data()) {
        EXPECT_EQ(v, 0.0);
    }
    const auto same = blend_illumination(plane_mask(mask), illum::IlluminationMap::constant(4, 4, 1.0));
    EXPECT_EQ(same.plane, mask);
    const auto half = blend_illumination(plane_mask(mask), illum::IlluminationMap::constant(4, 4, 0.5));
    EXPECT_DOUBLE_EQ(half.plane.at(0, 1, 1), 0.3);
}

TEST(BlendIllumination, DimensionMismatchIsContractError) {
    EXPECT_THROW((void)blend_illumination(plane_mask(Image(4, 4, 1)), illum::IlluminationMap::constant(4, 5, 1.0)),
                 ContractError);
}

TEST(ConvMerge, ZeroRainIsIdentity) {
    const Image b = random_image(9, 11, 3, 2);
    EXPECT_EQ(conv_merge(b, Image(9, 11, 1, 0.0)), b);
}

TEST(ConvMerge, SinglePixelSpreadsWithBinomialWeights) {
    const Image b(7, 7, 3, 0.5);
    const Image out = conv_merge(b, impulse(7, 0.16));
    for (int c = 0; c < 3; ++c) {
        EXPECT_NEAR(out.at(c, 3, 3), 0.5 + 0.16 * 4.0 / 16.0, 1e-15);
        EXPECT_NEAR(out.at(c, 2, 3), 0.52, 1e-15);
        EXPECT_NEAR(out.at(c, 4, 3), 0.52, 1e-15);
        EXPECT_NEAR(out.at(c, 3, 2), 0.52, 1e-15);
        EXPECT_NEAR(out.at(c, 3, 4), 0.52, 1e-15);
        EXPECT_NEAR(out.at(c, 2, 2), 0.51, 1e-15);
        EXPECT_EQ(out.at(c, 0, 0), 0.5);
    }
}

TEST(ConvMerge, Saturates) {
    const Image out = conv_merge(Image(5, 5, 3, 0.95), Image(5, 5, 1, 0.3));
    EXPECT_EQ(out.at(0, 2, 2), 1.0);
}

TEST(ConvMerge, ShapeErrors) {
    EXPECT_THROW((void)conv_merge(Image(4, 4, 3), Image(4, 5, 1)), ContractError);
    EXPECT_THROW((void)conv_merge(Image(4, 4, 3), Image(4, 4, 3)), ContractError);
}

TEST(LinearMerge, Examples) {
    EXPECT_DOUBLE_EQ(linear_merge(Image(2, 2, 3, 0.5), Image(2, 2, 1, 0.3)).at(1, 0, 0), 0.8);
    const Image b = random_image(3, 3, 3, 4);
    EXPECT_EQ(linear_merge(b, Image(3, 3, 1, 0.0)), b);
    EXPECT_EQ(linear_merge(Image(2, 2, 3, 0.9), Image(2, 2, 1, 0.3)).at(2, 1, 1), 1.0);
}

TEST(DefocusBlur, RadiusZeroIsIdentity) {
    const Image x = random_image(8, 8, 3, 1);
    EXPECT_EQ(defocus_blur(x, 0), x);
}

TEST(DefocusBlur, ImpulseSpreadsOverDiscreteDisk) {
    const Image out = defocus_blur(impulse(9, 1.0), 2);
    int lit = 0;
    for (int y = 0; y < 9; ++y) {
        for (int x = 0; x < 9; ++x) {
            const int dy = y - 4;
            const int dx = x - 4;
            if (dx * dx + dy * dy <= 4) {
                ++lit;
                EXPECT_NEAR(out.at(0, y, x), 1.0 / 13.0, 1e-15);
            } else {
                EXPECT_EQ(out.at(0, y, x), 0.0);
            }
        }
    }
    EXPECT_EQ(lit, 13);
}

TEST(DefocusBlur, ConstantPreservedIncludingBorders) {
    const Image out = defocus_blur(Image(10, 12, 3, 0.37), 3);
    for (double v : out.data()) {
        EXPECT_NEAR(v, 0.37, 1e-14);
    }
}

TEST(DefocusBlur, NegativeRadiusIsContractError) {
    EXPECT_THROW((void)defocus_blur(Image(3, 3, 3), -1), ContractError);
}

TEST(Occlude, FullMaskBlacksOut) {
    const Image out = occlude(random_image(4, 4, 3, 9), Image(4, 4, 1, 1.0));
    for (double v : out.data()) {
        EXPECT_EQ(v, 0.0);
    }
}

TEST(Occlude, FullOcclusionWithNoRainGivesBlack) {
    const Image b = random_image(6, 6, 3, 10);
    const Image out = conv_merge(occlude(defocus_blur(b, 3), Image(6, 6, 1, 1.0)), Image(6, 6, 1, 0.0));
    EXPECT_EQ(out, Image(6, 6, 3, 0.0));
}

TEST(SynthesizeStreak, InvisibleInDarkness) {
    // Left half black, right half lit: I vanishes on the left.
    const int h = 48;
    const int w = 48;
    Image b(h, w, 3, 0.0);
    for (int c = 0; c < 3; ++c) {
        for (int y = 0; y < h; ++y) {
            for (int x = w / 2; x < w; ++x) {
                b.set(c, y, x, 0.3 + 0.01 * (y % 10));
            }
        }
    }
    SynthesisConfig cfg = SynthesisConfig::full(Subset::RS, 5);
    cfg.streak.noise_count = 400;
    const auto r = synthesize_streak(b, cfg);
    // The 3x3 merge kernel reaches one pixel into the dark half.
    for (int c = 0; c < 3; ++c) {
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w / 2 - 1; ++x) {
                ASSERT_EQ(r.rainy.at(c, y, x), 0.0);
            }
        }
    }
    EXPECT_NE(r.rainy, b);
}

TEST(SynthesizeStreak, LinearBaselineIsPlainSuperposition) {
    const Image b = night_background(40, 40, 3);
    const SynthesisConfig cfg = SynthesisConfig::linear_baseline(Subset::RS, 17);
    const auto r = synthesize_streak(b, cfg);
    const auto params = rain::sample_streak_params(derive_seed(17, 0));
    const auto mask = rain::gen_streak_mask(params, 40, 40, derive_seed(17, 1));
    EXPECT_EQ(r.rainy, linear_merge(b, mask.plane));
    EXPECT_EQ(r.clean, b);
    EXPECT_EQ(r.streak_params, params);
}

TEST(SynthesizeStreak, OverridesApply) {
    SynthesisConfig cfg = SynthesisConfig::full(Subset::RS, 3);
    cfg.streak.length = 21;
    cfg.streak.angle_deg = -12.0;
    const auto r = synthesize_streak(Image(32, 32, 3, 0.4), cfg);
    ASSERT_TRUE(r.streak_params.has_value());
    EXPECT_EQ(r.streak_params->length, 21);
    EXPECT_EQ(r.streak_params->angle_deg, -12.0);
}

TEST(SynthesizeDrop, NoDropsNoDefocusIsIdentity) {
    const Image b = random_image(20, 20, 3, 6);
    SynthesisConfig cfg = SynthesisConfig::full(Subset::RD, 1);
    cfg.drop.count = 0;
    cfg.use_defocus = false;
    EXPECT_EQ(synthesize_drop(b, cfg).rainy, b);
}

TEST(SynthesizeDrop, CleanIsSharpBackground) {
    const Image b = night_background(32, 32, 8);
    const auto r = synthesize_drop(b, SynthesisConfig::full(Subset::RD, 2));
    EXPECT_EQ(r.clean, b);
    EXPECT_TRUE(r.drop_params.has_value());
}

TEST(Synthesize, DispatchRsEqualsStreakStage) {
    const Image b = night_background(32, 32, 1);
    const SynthesisConfig cfg = SynthesisConfig::full(Subset::RS, 44);
    EXPECT_EQ(synthesize(b, cfg).rainy, synthesize_streak(b, cfg).rainy);
    SynthesisConfig rd = cfg;
    rd.kind = Subset::RD;
    EXPECT_EQ(synthesize(b, rd).rainy, synthesize_drop(b, rd).rainy);
}

TEST(Synthesize, SdWithoutRainIsIdentity) {
    const Image b = random_image(24, 24, 3, 12);
    SynthesisConfig cfg = SynthesisConfig::full(Subset::SD, 9);
    cfg.streak.noise_count = 0;
    cfg.drop.count = 0;
    cfg.use_defocus = false;
    EXPECT_EQ(synthesize(b, cfg).rainy, b);
}

TEST(Synthesize, SdComposesStagesWithDerivedSeeds) {
    const Image b = night_background(40, 40, 5);
    const SynthesisConfig cfg = SynthesisConfig::full(Subset::SD, 123);
    SynthesisConfig stage = cfg;
    stage.seed = derive_seed(123, 0);
    const auto streak = synthesize_streak(b, stage);
    stage.seed = derive_seed(123, 1);
    const auto drop = synthesize_drop(streak.rainy, stage);
    const auto sd = synthesize(b, cfg);
    EXPECT_EQ(sd.rainy, drop.rainy);
    EXPECT_EQ(sd.clean, b);
    EXPECT_EQ(sd.streak_params, streak.streak_params);
    EXPECT_EQ(sd.drop_params, drop.drop_params);
}

class PipelineProperties : public ::testing::TestWithParam<Subset> {};

TEST_P(PipelineProperties, RangeDeterminismAndNullIdentity) {
    const Subset kind = GetParam();
    for (std::uint64_t s = 0; s < 4; ++s) {
        const Image b = night_background(36, 36, 200 + s);
        const SynthesisConfig cfg = SynthesisConfig::full(kind, s);
        const auto r1 = synthesize(b, cfg);
        const auto r2 = synthesize(b, cfg);
        EXPECT_EQ(r1.rainy, r2.rainy);
        for (double v : r1.rainy.data()) {
            ASSERT_GE(v, 0.0);
            ASSERT_LE(v, 1.0);
        }
        SynthesisConfig null_cfg = cfg;
        null_cfg.streak.noise_count = 0;
        null_cfg.drop.count = 0;
        null_cfg.use_defocus = false;
        const auto n = synthesize(b, null_cfg);
        EXPECT_EQ(n.rainy, n.clean);
    }
}

INSTANTIATE_TEST_SUITE_P(Subsets, PipelineProperties, ::testing::Values(Subset::RS, Subset::RD, Subset::SD));

TEST(SynthesisConfig, Presets) {
    const auto full = SynthesisConfig::full(Subset::RD, 7);
    EXPECT_EQ(full.merge_mode, MergeMode::Conv);
    EXPECT_TRUE(full.use_illumination);
    EXPECT_TRUE(full.use_defocus);
    EXPECT_EQ(full.defocus_radius, 3);
    const auto lin = SynthesisConfig::linear_baseline(Subset::RS, 7);
    EXPECT_EQ(lin.merge_mode, MergeMode::Linear);
    EXPECT_FALSE(lin.use_illumination);
    EXPECT_FALSE(lin.use_defocus);
}

TEST(SynthesisConfig, NegativeDefocusIsContractError) {
    SynthesisConfig cfg = SynthesisConfig::full(Subset::RD, 1);
    cfg.defocus_radius = -2;
    EXPECT_THROW(validate(cfg), ContractError);
    EXPECT_THROW((void)synthesize(Image(16, 16, 3), cfg), ContractError);
}

TEST(SynthesisConfig, SingleChannelBackgroundIsContractError) {
    EXPECT_THROW((void)synthesize(Image(16, 16, 1), SynthesisConfig::full(Subset::RS, 1)), ContractError);
}

TEST(Names, ParseRoundtrip) {
    for (Subset s : {Subset::RS, Subset::RD, Subset::SD}) {
        EXPECT_EQ(parse_subset(subset_name(s)), s);
    }
    for (MergeMode m : {MergeMode::Linear, MergeMode::Conv}) {
        EXPECT_EQ(parse_merge_mode(merge_mode_name(m)), m);
    }
    EXPECT_FALSE(parse_subset("XX").has_value());
}

} // namespace
} // namespace nightrain::compose
