// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/colorspace.hpp"
#include "nightrain/compositor.hpp"
#include "nightrain/csclab.hpp"
#include "nightrain/illumination.hpp"
#include "nightrain/metrics.hpp"
#include "nightrain/rainmask.hpp"
#include "nightrain/random.hpp"

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

namespace {

using namespace nightrain;

Image noise_image(int side, int channels, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> data(static_cast<std::size_t>(side) * static_cast<std::size_t>(side) *
                             static_cast<std::size_t>(channels));
    for (double& v : data) {
        v = rng.uniform(0.0, 1.0);
    }
    return Image::from_data(side, side, channels, std::move(data));
}

void BM_RgbToYCbCr(benchmark::State& state) {
    const Image img = noise_image(static_cast<int>(state.range(0)), 3, 1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(color::rgb_to_ycbcr(img));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(0));
}
BENCHMARK(BM_RgbToYCbCr)->Arg(128)->Arg(512);

void BM_Ssim(benchmark::State& state) {
    const Image a = noise_image(static_cast<int>(state.range(0)), 3, 2);
    const Image b = noise_image(static_cast<int>(state.range(0)), 3, 3);
    for (auto _ : state) {
        benchmark::DoNotOptimize(ssim(a, b));
    }
}
BENCHMARK(BM_Ssim)->Arg(128)->Arg(512);

void BM_IlluminationEstimate(benchmark::State& state) {
    const Image img = noise_image(static_cast<int>(state.range(0)), 3, 4);
    const auto thresholds = illum::ThresholdPair::defaults();
    for (auto _ : state) {
        benchmark::DoNotOptimize(illum::estimate(img, thresholds));
    }
}
BENCHMARK(BM_IlluminationEstimate)->Arg(256);

void BM_StreakMask(benchmark::State& state) {
    rain::StreakParams p;
    p.width = static_cast<double>(state.range(1));
    const int side = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rain::gen_streak_mask(p, side, side, 5));
    }
}
BENCHMARK(BM_StreakMask)->Args({256, 3})->Args({256, 7})->Args({512, 5});

void BM_DropMask(benchmark::State& state) {
    const auto p = rain::sample_drop_params(6);
    const int side = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rain::gen_drop_mask(p, side, side, 7));
    }
}
BENCHMARK(BM_DropMask)->Arg(256);

void BM_DefocusBlur(benchmark::State& state) {
    const Image img = noise_image(256, 3, 8);
    const int radius = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose::defocus_blur(img, radius));
    }
}
BENCHMARK(BM_DefocusBlur)->Arg(1)->Arg(3)->Arg(6);

void BM_Synthesize(benchmark::State& state) {
    const Image bg = noise_image(256, 3, 9);
    const auto kind = static_cast<compose::Subset>(state.range(0));
    const auto cfg = compose::SynthesisConfig::full(kind, 10);
    for (auto _ : state) {
        benchmark::DoNotOptimize(compose::synthesize(bg, cfg));
    }
    state.SetLabel(std::string(compose::subset_name(kind)));
}
BENCHMARK(BM_Synthesize)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

void BM_CscGradient(benchmark::State& state) {
    const auto c = csc::LearnableConverter::random(11);
    const auto batch = csc::make_batch(color::canonical_matrix(), 64, 12);
    for (auto _ : state) {
        benchmark::DoNotOptimize(csc::gradient(c, batch, csc::LossKind::Mse));
    }
}
BENCHMARK(BM_CscGradient);

} // namespace

BENCHMARK_MAIN();
