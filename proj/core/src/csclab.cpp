// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/csclab.hpp"

#include "nightrain/errors.hpp"
#include "nightrain/metrics.hpp"
#include "nightrain/random.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nightrain::csc {

namespace {

using Entries = std::array<double, kMatrixEntries>;

void require_same_shape(const Image& a, const Image& b, const char* op) {
    if (!a.same_shape(b)) {
        throw ContractError(std::string(op) + ": image shapes differ");
    }
    if (a.empty()) {
        throw ContractError(std::string(op) + ": empty images");
    }
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Forward pass keeping the hidden activations for backprop.
struct Forward {
    std::vector<double> hidden;  // tanh activations
    Entries matrix{};
};

Forward forward(const LearnableConverter& c) {
    Forward f;
    if (c.is_bypass()) {
        f.matrix = c.phi();
        return f;
    }
    const Mlp& mlp = *c.mlp();
    const auto h = static_cast<std::size_t>(mlp.hidden);
    f.hidden.resize(h);
    for (std::size_t j = 0; j < h; ++j) {
        double z = mlp.b1[j];
        for (std::size_t k = 0; k < kMatrixEntries; ++k) {
            z += mlp.w1[j * kMatrixEntries + k] * c.phi()[k];
        }
        f.hidden[j] = std::tanh(z);
    }
    for (std::size_t i = 0; i < kMatrixEntries; ++i) {
        double m = mlp.b2[i];
        for (std::size_t j = 0; j < h; ++j) {
            m += mlp.w2[i * h + j] * f.hidden[j];
        }
        f.matrix[i] = m;
    }
    return f;
}

// d(loss)/d(effective matrix entries) for a fixed matrix.
Entries matrix_gradient(const Entries& m, const Batch& batch, LossKind loss, double eps) {
    Entries g{};
    const double scale = 1.0 / (3.0 * static_cast<double>(batch.size()));
    for (const Sample& s : batch) {
        for (std::size_t c = 0; c < 3; ++c) {
            const double out = m[3 * c] * s.rgb[0] + m[3 * c + 1] * s.rgb[1] + m[3 * c + 2] * s.rgb[2];
            const double r = out - s.target[c];
            const double dr = loss == LossKind::Mse ? 2.0 * r : r / std::sqrt(r * r + eps * eps);
            for (std::size_t k = 0; k < 3; ++k) {
                g[3 * c + k] += dr * s.rgb[k];
            }
        }
    }
    for (double& v : g) {
        v *= scale;
    }
    return g;
}

double matrix_loss(const Entries& m, const Batch& batch, LossKind loss, double eps) {
    double acc = 0.0;
    for (const Sample& s : batch) {
        for (std::size_t c = 0; c < 3; ++c) {
            const double out = m[3 * c] * s.rgb[0] + m[3 * c + 1] * s.rgb[1] + m[3 * c + 2] * s.rgb[2];
            const double r = out - s.target[c];
            acc += loss == LossKind::Mse ? r * r : std::sqrt(r * r + eps * eps);
        }
    }
    return acc / (3.0 * static_cast<double>(batch.size()));
}

Entries to_entries(const color::ConversionMatrix& m) {
    Entries e{};
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            e[3 * r + c] = m.rows[r][c];
        }
    }
    return e;
}

} // namespace

// ---------------------------------------------------------------------------

Mlp Mlp::zeros(int hidden) {
    if (hidden < 1) {
        throw ContractError("mlp hidden width must be >= 1");
    }
    const auto h = static_cast<std::size_t>(hidden);
    Mlp m;
    m.hidden = hidden;
    m.w1.assign(h * kMatrixEntries, 0.0);
    m.b1.assign(h, 0.0);
    m.w2.assign(kMatrixEntries * h, 0.0);
    m.b2.assign(kMatrixEntries, 0.0);
    return m;
}

std::size_t Mlp::parameter_count() const noexcept {
    return w1.size() + b1.size() + w2.size() + b2.size();
}

std::array<double, kMatrixEntries> Mlp::forward(const std::array<double, kMatrixEntries>& in) const {
    auto c = LearnableConverter::with_mlp(in, *this);
    return to_entries(c.effective_matrix());
}

LearnableConverter LearnableConverter::bypass(const std::array<double, kMatrixEntries>& phi) {
    LearnableConverter c;
    c.phi_ = phi;
    return c;
}

LearnableConverter LearnableConverter::bypass(const color::ConversionMatrix& m) {
    return bypass(to_entries(m));
}

LearnableConverter LearnableConverter::with_mlp(const std::array<double, kMatrixEntries>& phi, Mlp mlp) {
    const auto h = static_cast<std::size_t>(mlp.hidden);
    if (mlp.hidden < 1 || mlp.w1.size() != h * kMatrixEntries || mlp.b1.size() != h ||
        mlp.w2.size() != kMatrixEntries * h || mlp.b2.size() != kMatrixEntries) {
        throw ContractError("mlp layer sizes do not match hidden width");
    }
    LearnableConverter c;
    c.phi_ = phi;
    c.mlp_ = std::move(mlp);
    return c;
}

LearnableConverter LearnableConverter::random(std::uint64_t seed, int hidden) {
    Rng rng(seed);
    Entries phi{};
    for (double& v : phi) {
        v = rng.uniform(-1.0, 1.0);
    }
    Mlp mlp = Mlp::zeros(hidden);
    const double s1 = 1.0 / 3.0;
    const double s2 = 1.0 / std::sqrt(static_cast<double>(hidden));
    for (double& v : mlp.w1) {
        v = rng.uniform(-s1, s1);
    }
    for (double& v : mlp.w2) {
        v = rng.uniform(-s2, s2);
    }
    return with_mlp(phi, std::move(mlp));
}

color::ConversionMatrix LearnableConverter::effective_matrix() const {
    if (!all_finite(parameters())) {
        throw ContractError("converter weights must be finite");
    }
    const Entries e = forward(*this).matrix;
    if (!all_finite(e)) {
        throw ContractError("converter produced a non-finite matrix");
    }
    color::ConversionMatrix m;
    for (std::size_t r = 0; r < 3; ++r) {
        for (std::size_t c = 0; c < 3; ++c) {
            m.rows[r][c] = e[3 * r + c];
        }
    }
    return m;
}

std::size_t LearnableConverter::parameter_count() const noexcept {
    return kMatrixEntries + (mlp_ ? mlp_->parameter_count() : 0);
}

std::vector<double> LearnableConverter::parameters() const {
    std::vector<double> p(phi_.begin(), phi_.end());
    if (mlp_) {
        p.insert(p.end(), mlp_->w1.begin(), mlp_->w1.end());
        p.insert(p.end(), mlp_->b1.begin(), mlp_->b1.end());
        p.insert(p.end(), mlp_->w2.begin(), mlp_->w2.end());
        p.insert(p.end(), mlp_->b2.begin(), mlp_->b2.end());
    }
    return p;
}

void LearnableConverter::set_parameters(std::span<const double> params) {
    if (params.size() != parameter_count()) {
        throw ContractError("parameter vector length " + std::to_string(params.size()) + " != " +
                            std::to_string(parameter_count()));
    }
    auto it = params.begin();
    auto take = [&it](std::span<double> dst) {
        std::copy(it, it + static_cast<std::ptrdiff_t>(dst.size()), dst.begin());
        it += static_cast<std::ptrdiff_t>(dst.size());
    };
    take(phi_);
    if (mlp_) {
        take(mlp_->w1);
        take(mlp_->b1);
        take(mlp_->w2);
        take(mlp_->b2);
    }
}

SignedImage convert(const Image& img, const LearnableConverter& c) {
    return color::apply_matrix(img, c.effective_matrix());
}

// ---------------------------------------------------------------------------

double loss_mse(const Image& y_pred, const Image& y_gt) {
    require_same_shape(y_pred, y_gt, "loss_mse");
    const auto a = y_pred.data();
    const auto b = y_gt.data();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = b[i] - a[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.size());
}

double loss_charbonnier(const Image& o, const Image& gt, double eps) {
    require_same_shape(o, gt, "loss_charbonnier");
    const auto a = o.data();
    const auto b = gt.data();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += std::sqrt(d * d + eps * eps);
    }
    return acc / static_cast<double>(a.size());
}

double loss_ssim(const Image& o, const Image& gt) {
    return 1.0 - ssim(o, gt);
}

Image edge_map(const Image& gt) {
    const Kernel lap = laplacian3();
    std::vector<double> e;
    e.reserve(gt.data().size());
    for (int c = 0; c < gt.channels(); ++c) {
        const auto p = convolve(gt.plane(c), gt.height(), gt.width(), lap, Border::Replicate);
        for (double v : p) {
            e.push_back(std::abs(v));
        }
    }
    const double peak = e.empty() ? 0.0 : *std::max_element(e.begin(), e.end());
    for (double& v : e) {
        v = peak > 0.0 ? v / peak : 0.0;
    }
    return Image::from_data(gt.height(), gt.width(), gt.channels(), std::move(e));
}

double loss_edge(const Image& o, const Image& gt) {
    require_same_shape(o, gt, "loss_edge");
    const Image e = edge_map(gt);
    const auto we = e.data();
    const auto a = o.data();
    const auto b = gt.data();
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += we[i] * std::abs(b[i] - a[i]);
    }
    return acc / static_cast<double>(a.size());
}

double loss_total(const Image& o, const Image& gt, const Image& y_pred, const Image& y_gt,
                  const LossWeights& weights) {
    return loss_mse(y_pred, y_gt) + loss_ssim(o, gt) + loss_charbonnier(o, gt, weights.epsilon) +
           weights.alpha * loss_edge(o, gt);
}

// ---------------------------------------------------------------------------

double batch_loss(const LearnableConverter& c, const Batch& batch, LossKind loss, double eps) {
    if (batch.empty()) {
        throw ContractError("batch_loss: empty batch");
    }
    return matrix_loss(forward(c).matrix, batch, loss, eps);
}

std::vector<double> gradient(const LearnableConverter& c, const Batch& batch, LossKind loss, double eps) {
    if (batch.empty()) {
        throw ContractError("gradient: empty batch");
    }
    const Forward f = forward(c);
    const Entries gm = matrix_gradient(f.matrix, batch, loss, eps);
    std::vector<double> g(c.parameter_count(), 0.0);
    if (c.is_bypass()) {
        std::copy(gm.begin(), gm.end(), g.begin());
        return g;
    }

    const Mlp& mlp = *c.mlp();
    const auto h = static_cast<std::size_t>(mlp.hidden);
    double* g_phi = g.data();
    double* g_w1 = g_phi + kMatrixEntries;
    double* g_b1 = g_w1 + h * kMatrixEntries;
    double* g_w2 = g_b1 + h;
    double* g_b2 = g_w2 + kMatrixEntries * h;

    std::vector<double> g_hidden(h, 0.0);
    for (std::size_t i = 0; i < kMatrixEntries; ++i) {
        g_b2[i] = gm[i];
        for (std::size_t j = 0; j < h; ++j) {
            g_w2[i * h + j] = gm[i] * f.hidden[j];
            g_hidden[j] += mlp.w2[i * h + j] * gm[i];
        }
    }
    for (std::size_t j = 0; j < h; ++j) {
        const double gz = g_hidden[j] * (1.0 - f.hidden[j] * f.hidden[j]);
        g_b1[j] = gz;
        for (std::size_t k = 0; k < kMatrixEntries; ++k) {
            g_w1[j * kMatrixEntries + k] = gz * c.phi()[k];
            g_phi[k] += mlp.w1[j * kMatrixEntries + k] * gz;
        }
    }
    return g;
}

std::vector<double> central_difference(const std::function<double(std::span<const double>)>& f,
                                       std::span<const double> at, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        throw ContractError("finite-difference step must be positive");
    }
    std::vector<double> x(at.begin(), at.end());
    std::vector<double> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double orig = x[i];
        x[i] = orig + step;
        const double up = f(x);
        x[i] = orig - step;
        const double down = f(x);
        x[i] = orig;
        g[i] = (up - down) / (2.0 * step);
    }
    return g;
}

std::vector<double> finite_diff_gradient(const LearnableConverter& c, const Batch& batch, LossKind loss,
                                         double step, double eps) {
    if (batch.empty()) {
        throw ContractError("finite_diff_gradient: empty batch");
    }
    LearnableConverter probe = c;
    return central_difference(
        [&](std::span<const double> p) {
            probe.set_parameters(p);
            return matrix_loss(forward(probe).matrix, batch, loss, eps);
        },
        c.parameters(), step);
}

double max_relative_error(std::span<const double> a, std::span<const double> b, double floor) {
    if (a.size() != b.size()) {
        throw ContractError("max_relative_error: length mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double denom = std::max({std::abs(a[i]), std::abs(b[i]), floor});
        worst = std::max(worst, std::abs(a[i] - b[i]) / denom);
    }
    return worst;
}

Batch make_batch(const color::ConversionMatrix& target, int count, std::uint64_t seed) {
    if (count < 1) {
        throw ContractError("make_batch: count must be >= 1");
    }
    Rng rng(seed);
    Batch batch(static_cast<std::size_t>(count));
    for (Sample& s : batch) {
        for (double& v : s.rgb) {
            v = rng.uniform01();
        }
        for (std::size_t r = 0; r < 3; ++r) {
            s.target[r] = target.rows[r][0] * s.rgb[0] + target.rows[r][1] * s.rgb[1] +
                          target.rows[r][2] * s.rgb[2];
        }
    }
    return batch;
}

TrainResult train_recover(std::uint64_t seed, const TrainOptions& options) {
    return train_recover(LearnableConverter::random(derive_seed(seed, 0), options.hidden), seed, options);
}

TrainResult train_recover(const LearnableConverter& init, std::uint64_t seed, const TrainOptions& options) {
    if (options.steps < 1) {
        throw ContractError("train_recover: steps must be >= 1");
    }
    const auto target = color::canonical_matrix();
    const Batch train = make_batch(target, options.samples, derive_seed(seed, 1));
    const Batch holdout = make_batch(target, options.holdout, derive_seed(seed, 2));

    TrainResult result{init, 0.0, {}};
    result.loss_curve.reserve(static_cast<std::size_t>(options.steps));
    std::vector<double> params = init.parameters();
    for (int step = 0; step < options.steps; ++step) {
        const double loss = batch_loss(result.converter, train, LossKind::Mse);
        if (!std::isfinite(loss)) {
            throw TrainingError("training diverged at step " + std::to_string(step));
        }
        result.loss_curve.push_back(loss);
        const auto g = gradient(result.converter, train, LossKind::Mse);
        for (std::size_t i = 0; i < params.size(); ++i) {
            params[i] -= options.learning_rate * g[i];
        }
        result.converter.set_parameters(params);
    }
    result.final_mse = batch_loss(result.converter, holdout, LossKind::Mse);
    if (!std::isfinite(result.final_mse)) {
        throw TrainingError("training diverged: held-out loss is not finite");
    }
    return result;
}

// ---------------------------------------------------------------------------

Kernel AggregationKernel::kernel() const {
    return gaussian_kernel(window_radius, decay_sigma);
}

Image iig_aggregate(const Image& plane, int window_radius, double decay_sigma) {
    if (plane.channels() != 1) {
        throw ContractError("iig_aggregate: expected a single-channel plane");
    }
    if (window_radius < 0) {
        throw ContractError("iig_aggregate: window radius must be >= 0");
    }
    if (window_radius == 0) {
        return plane;
    }
    const Kernel k = AggregationKernel{window_radius, decay_sigma}.kernel();
    return Image::from_data(plane.height(), plane.width(), 1,
                            convolve(plane.plane(0), plane.height(), plane.width(), k, Border::Renormalize));
}

} // namespace nightrain::csc
