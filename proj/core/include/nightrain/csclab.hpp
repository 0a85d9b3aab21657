// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/colorspace.hpp"
#include "nightrain/filter.hpp"
#include "nightrain/image.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace nightrain::csc {

inline constexpr int kMatrixEntries = 9;

/// Dense 9 -> hidden -> 9 perceptron with a tanh hidden layer.
///
/// w1 is hidden x 9 row-major, w2 is 9 x hidden row-major.
struct Mlp {
    int hidden = 0;
    std::vector<double> w1;
    std::vector<double> b1;
    std::vector<double> w2;
    std::vector<double> b2;

    /// Zero-initialized network of the given width.
    static Mlp zeros(int hidden);
    [[nodiscard]] std::size_t parameter_count() const noexcept;
    [[nodiscard]] std::array<double, kMatrixEntries> forward(
        const std::array<double, kMatrixEntries>& in) const;

    friend bool operator==(const Mlp&, const Mlp&) = default;
};

/// Learnable color-space converter: a 3x3 parameter matrix phi passed through
/// an MLP to give the effective per-pixel transform.
///
/// A converter without an MLP is in bypass mode: the effective matrix is phi
/// itself, so the fixed conversion is exactly representable.
///
/// Flattened parameter order: phi (9), w1, b1, w2, b2.
class LearnableConverter {
public:
    static LearnableConverter bypass(const std::array<double, kMatrixEntries>& phi);
    static LearnableConverter bypass(const color::ConversionMatrix& m);
    static LearnableConverter with_mlp(const std::array<double, kMatrixEntries>& phi, Mlp mlp);
    /// phi ~ U(-1, 1); w1 ~ U(-1/3, 1/3); w2 ~ U(-1/sqrt(h), 1/sqrt(h)); zero biases.
    static LearnableConverter random(std::uint64_t seed, int hidden = 32);

    [[nodiscard]] bool is_bypass() const noexcept { return !mlp_.has_value(); }
    [[nodiscard]] const std::array<double, kMatrixEntries>& phi() const noexcept { return phi_; }
    [[nodiscard]] const std::optional<Mlp>& mlp() const noexcept { return mlp_; }

    /// MLP(phi) reshaped to 3x3. Throws ContractError on non-finite weights.
    [[nodiscard]] color::ConversionMatrix effective_matrix() const;

    [[nodiscard]] std::size_t parameter_count() const noexcept;
    [[nodiscard]] std::vector<double> parameters() const;
    /// Throws ContractError when the length differs from parameter_count().
    void set_parameters(std::span<const double> params);

    friend bool operator==(const LearnableConverter&, const LearnableConverter&) = default;

private:
    LearnableConverter() = default;

    std::array<double, kMatrixEntries> phi_{};
    std::optional<Mlp> mlp_;
};

/// Per-pixel product with the effective matrix; same contract as
/// color::apply_matrix.
SignedImage convert(const Image& img, const LearnableConverter& c);

// ---------------------------------------------------------------------------
// Image losses

struct LossWeights {
    double alpha = 0.5;     ///< edge-loss weight
    double epsilon = 1e-3;  ///< Charbonnier offset
};

/// mean (y_gt - y_pred)^2 over every value.
double loss_mse(const Image& y_pred, const Image& y_gt);
/// mean sqrt((o - gt)^2 + eps^2), evaluated per value.
double loss_charbonnier(const Image& o, const Image& gt, double eps = 1e-3);
/// 1 - ssim(o, gt).
double loss_ssim(const Image& o, const Image& gt);
/// |Laplacian(gt)| per channel, scaled so the largest entry is 1 (all zero
/// when gt is flat).
Image edge_map(const Image& gt);
/// mean E * |gt - o| over every value.
double loss_edge(const Image& o, const Image& gt);
/// mse(y) + ssim + charbonnier + alpha * edge.
double loss_total(const Image& o, const Image& gt, const Image& y_pred, const Image& y_gt,
                  const LossWeights& weights = {});

// ---------------------------------------------------------------------------
// Converter training

struct Sample {
    std::array<double, 3> rgb{};
    std::array<double, 3> target{};
};
using Batch = std::vector<Sample>;

enum class LossKind { Mse, Charbonnier };

/// Mean loss over samples and the three output components.
double batch_loss(const LearnableConverter& c, const Batch& batch, LossKind loss,
                  double eps = 1e-3);

/// Reverse-mode gradient of batch_loss with respect to parameters().
/// Throws ContractError on an empty batch.
std::vector<double> gradient(const LearnableConverter& c, const Batch& batch, LossKind loss,
                             double eps = 1e-3);

/// (f(w + h e_i) - f(w - h e_i)) / 2h for every coordinate.
/// Throws ContractError unless step > 0.
std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> at, double step);

/// Central-difference gradient of batch_loss.
std::vector<double> finite_diff_gradient(const LearnableConverter& c, const Batch& batch,
                                         LossKind loss, double step = 1e-5, double eps = 1e-3);

/// max_i |a_i - b_i| / max(|a_i|, |b_i|, floor).
double max_relative_error(std::span<const double> a, std::span<const double> b,
                          double floor = 1e-6);

/// `count` uniform RGB triples mapped through `target`.
Batch make_batch(const color::ConversionMatrix& target, int count, std::uint64_t seed);

struct TrainOptions {
    int hidden = 32;
    double learning_rate = 1e-2;
    int steps = 5000;
    int samples = 4096;
    int holdout = 1024;
};

struct TrainResult {
    LearnableConverter converter;
    double final_mse = 0.0;           ///< held-out MSE against the canonical matrix
    std::vector<double> loss_curve;   ///< training MSE before each step
};

/// Full-batch gradient descent on MSE towards the canonical YCbCr mapping,
/// from a seeded random initialization. Throws TrainingError when the loss
/// stops being finite, ContractError for steps < 1.
TrainResult train_recover(std::uint64_t seed, const TrainOptions& options = {});
/// Same, starting from `init`.
TrainResult train_recover(const LearnableConverter& init, std::uint64_t seed,
                          const TrainOptions& options = {});

// ---------------------------------------------------------------------------
// Illumination aggregation

/// Distance-decaying window weights: a normalized Gaussian of the given sigma
/// over a (2r+1)^2 window.
struct AggregationKernel {
    int window_radius = 3;
    double decay_sigma = 1.5;

    [[nodiscard]] Kernel kernel() const;
};

/// Weighted sum of each pixel's neighborhood. Near the border the weights are
/// renormalized over the in-image part of the window, so the result is a
/// convex combination of input values everywhere.
Image iig_aggregate(const Image& plane, int window_radius, double decay_sigma);

} // namespace nightrain::csc
