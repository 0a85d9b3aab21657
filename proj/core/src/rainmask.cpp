// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/rainmask.hpp"

#include "nightrain/errors.hpp"
#include "nightrain/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <numeric>
#include <string>

namespace nightrain::rain {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Subsamples per axis when rasterizing drops.
constexpr int kSuper = 4;

double amplitude_mass(std::span<const double> amps) {
    double s = 0.0;
    for (double a : amps) {
        s += std::abs(a);
    }
    return s;
}

double boundary_radius(double r0, std::span<const double> amps, double phi, double theta_shape) {
    const double st = std::sin(theta_shape);
    double sum = 0.0;
    for (std::size_t k = 0; k < amps.size(); ++k) {
        sum += amps[k] * std::cos(static_cast<double>(k + 1) * phi) * st;
    }
    return r0 * (1.0 + sum);
}

// Bresenham between integer endpoints, all octants.
template <typename Plot>
void bresenham(int x0, int y0, int x1, int y1, Plot&& plot) {
    const int dx = std::abs(x1 - x0);
    const int sx = x0 < x1 ? 1 : -1;
    const int dy = -std::abs(y1 - y0);
    const int sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    for (;;) {
        plot(x0, y0);
        if (x0 == x1 && y0 == y1) {
            break;
        }
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

// Peak of the streak filter's response to a unit impulse.
double impulse_peak(const Kernel& motion, const Kernel& widen) {
    const int size = motion.size + widen.size + 1;
    std::vector<double> impulse(static_cast<std::size_t>(size) * static_cast<std::size_t>(size), 0.0);
    impulse[static_cast<std::size_t>((size / 2) * size + size / 2)] = 1.0;
    const auto a = convolve_sparse(impulse, size, size, motion);
    const auto b = convolve_sparse(a, size, size, widen);
    return *std::max_element(b.begin(), b.end());
}

} // namespace

void validate(const StreakParams& p) {
    if (p.noise_count < 0) {
        throw ContractError("streak noise_count must be >= 0");
    }
    if (p.length < 1) {
        throw ContractError("streak length must be >= 1");
    }
    if (!(std::abs(p.angle_deg) <= 45.0)) {
        throw ContractError("streak angle must lie in [-45, 45] degrees");
    }
    if (!(p.width > 0.0) || !std::isfinite(p.width)) {
        throw ContractError("streak width must be positive");
    }
    if (!(p.transparency > 0.0 && p.transparency <= 1.0)) {
        throw ContractError("streak transparency must lie in (0, 1]");
    }
}

void validate(const DropParams& p) {
    if (p.count < 0) {
        throw ContractError("drop count must be >= 0");
    }
    if (!(p.base_radius > 0.0) || !std::isfinite(p.base_radius)) {
        throw ContractError("drop base radius must be positive");
    }
    if (!(amplitude_mass(p.mode_amplitudes) < 1.0)) {
        throw ContractError("sum of |mode amplitudes| must be below 1 (shape would self-intersect)");
    }
    if (!(p.brightness > 0.0 && p.brightness <= 1.0)) {
        throw ContractError("drop brightness must lie in (0, 1]");
    }
}

Image gen_noise(int n, int height, int width, std::uint64_t seed) {
    const std::size_t total = static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
    if (n < 0 || static_cast<std::size_t>(n) > total) {
        throw ContractError("gen_noise: count " + std::to_string(n) + " exceeds " + std::to_string(total) +
                            " pixels");
    }
    Rng rng(seed);
    std::vector<double> plane(total, 0.0);
    std::vector<std::uint32_t> order(total);
    std::iota(order.begin(), order.end(), 0U);
    for (int i = 0; i < n; ++i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(i, static_cast<std::int64_t>(total) - 1));
        std::swap(order[static_cast<std::size_t>(i)], order[j]);
        plane[order[static_cast<std::size_t>(i)]] = 1.0 - 0.5 * rng.uniform01();
    }
    return Image::from_data(height, width, 1, std::move(plane));
}

Kernel motion_blur_kernel(int length, double angle_deg) {
    if (length < 1) {
        throw ContractError("motion_blur_kernel: length must be >= 1");
    }
    if (!(std::abs(angle_deg) <= 45.0)) {
        throw ContractError("motion_blur_kernel: angle must lie in [-45, 45] degrees");
    }
    const double theta = angle_deg * kDegToRad;
    const double center = (length - 1) / 2.0;
    const double sx = center * std::sin(theta);
    const double sy = center * std::cos(theta);
    const int x0 = static_cast<int>(std::lround(center - sx));
    const int y0 = static_cast<int>(std::lround(center - sy));
    const int x1 = static_cast<int>(std::lround(center + sx));
    const int y1 = static_cast<int>(std::lround(center + sy));

    Kernel k;
    k.size = length;
    k.weights.assign(static_cast<std::size_t>(length) * static_cast<std::size_t>(length), 0.0);
    int count = 0;
    bresenham(x0, y0, x1, y1, [&](int x, int y) {
        double& cell = k.weights[static_cast<std::size_t>(y * length + x)];
        if (cell == 0.0) {
            cell = 1.0;
            ++count;
        }
    });
    for (double& w : k.weights) {
        w /= count;
    }
    return k;
}

Kernel streak_width_kernel(double width, double angle_deg) {
    if (!(width > 0.0)) {
        throw ContractError("streak_width_kernel: width must be positive");
    }
    const double sigma = width / 3.0;
    const int radius = static_cast<int>(std::ceil(3.0 * sigma));
    const double along_sigma = sigma / 2.0;
    const double theta = angle_deg * kDegToRad;
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    Kernel k;
    k.size = 2 * radius + 1;
    k.weights.assign(static_cast<std::size_t>(k.size) * static_cast<std::size_t>(k.size), 0.0);
    double sum = 0.0;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            const double along = dx * s + dy * c;
            const double across = dx * c - dy * s;
            const double w = std::exp(-(across * across) / (2.0 * sigma * sigma) -
                                      (along * along) / (2.0 * along_sigma * along_sigma));
            k.weights[static_cast<std::size_t>((dy + radius) * k.size + (dx + radius))] = w;
            sum += w;
        }
    }
    for (double& w : k.weights) {
        w /= sum;
    }
    return k;
}

RainMask gen_streak_mask(const StreakParams& p, int height, int width, std::uint64_t seed) {
    validate(p);
    const Image noise = gen_noise(p.noise_count, height, width, seed);
    RainMask mask;
    mask.kind = MaskKind::Streak;
    if (p.noise_count == 0) {
        mask.plane = Image(height, width, 1, 0.0);
        return mask;
    }
    const Kernel motion = motion_blur_kernel(p.length, p.angle_deg);
    const Kernel widen = streak_width_kernel(p.width, p.angle_deg);
    const auto streaks = convolve_sparse(noise.plane(0), height, width, motion);
    auto wide = convolve_sparse(streaks, height, width, widen);
    // An isolated streak from a noise value v peaks at t * v.
    const double gain = p.transparency / impulse_peak(motion, widen);
    for (double& v : wide) {
        v = std::clamp(v * gain, 0.0, 1.0);
    }
    mask.plane = Image::from_data(height, width, 1, std::move(wide));
    return mask;
}

double drop_boundary(const DropParams& p, double phi, double theta_shape) {
    if (!(p.base_radius > 0.0)) {
        throw ContractError("drop_boundary: base radius must be positive");
    }
    if (!(amplitude_mass(p.mode_amplitudes) < 1.0)) {
        throw ContractError("drop_boundary: sum of |mode amplitudes| must be below 1");
    }
    return boundary_radius(p.base_radius, p.mode_amplitudes, phi, theta_shape);
}

RainMask render_drops(std::span<const DropInstance> drops, std::span<const double> mode_amplitudes,
                      double brightness, int height, int width) {
    if (!(amplitude_mass(mode_amplitudes) < 1.0)) {
        throw ContractError("render_drops: sum of |mode amplitudes| must be below 1");
    }
    const std::size_t n = static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
    std::vector<double> d(n, 0.0);
    std::vector<double> m(n, 0.0);
    const double reach = 1.0 + amplitude_mass(mode_amplitudes);
    constexpr double inv_samples = 1.0 / (kSuper * kSuper);

    for (const DropInstance& drop : drops) {
        const double extent = drop.radius * reach + 1.0;
        const int x_lo = std::max(0, static_cast<int>(std::floor(drop.cx - extent)));
        const int x_hi = std::min(width - 1, static_cast<int>(std::ceil(drop.cx + extent)));
        const int y_lo = std::max(0, static_cast<int>(std::floor(drop.cy - extent)));
        const int y_hi = std::min(height - 1, static_cast<int>(std::ceil(drop.cy + extent)));
        for (int y = y_lo; y <= y_hi; ++y) {
            for (int x = x_lo; x <= x_hi; ++x) {
                int covered = 0;
                double intensity = 0.0;
                for (int sy = 0; sy < kSuper; ++sy) {
                    for (int sx = 0; sx < kSuper; ++sx) {
                        const double px = x + (sx + 0.5) / kSuper - 0.5 - drop.cx;
                        const double py = y + (sy + 0.5) / kSuper - 0.5 - drop.cy;
                        const double dist = std::hypot(px, py);
                        const double phi = std::atan2(py, px) - drop.rotation;
                        const double rb = boundary_radius(drop.radius, mode_amplitudes, phi, drop.theta_shape);
                        if (dist <= rb) {
                            ++covered;
                            const double rho = dist / rb;
                            // dim center, bright rim
                            intensity += 0.6 + 0.4 * rho * rho;
                        }
                    }
                }
                if (covered == 0) {
                    continue;
                }
                const std::size_t i = static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                                      static_cast<std::size_t>(x);
                d[i] = std::max(d[i], brightness * intensity * inv_samples);
                if (covered * 2 > kSuper * kSuper) {
                    m[i] = 1.0;
                }
            }
        }
    }
    RainMask mask;
    mask.kind = MaskKind::Drop;
    mask.plane = Image::from_data(height, width, 1, std::move(d));
    mask.binary = Image::from_data(height, width, 1, std::move(m));
    return mask;
}

std::vector<DropInstance> place_drops(const DropParams& p, int height, int width, std::uint64_t seed) {
    validate(p);
    Rng rng(seed);
    std::vector<DropInstance> drops;
    drops.reserve(static_cast<std::size_t>(p.count));
    for (int i = 0; i < p.count; ++i) {
        DropInstance d;
        d.cx = rng.uniform(-0.5, width - 0.5);
        d.cy = rng.uniform(-0.5, height - 0.5);
        d.radius = p.base_radius * rng.uniform(0.8, 1.2);
        d.theta_shape = rng.uniform(0.0, std::numbers::pi);
        d.rotation = rng.uniform(0.0, 2.0 * std::numbers::pi);
        drops.push_back(d);
    }
    return drops;
}

RainMask gen_drop_mask(const DropParams& p, int height, int width, std::uint64_t seed) {
    const auto drops = place_drops(p, height, width, seed);
    return render_drops(drops, p.mode_amplitudes, p.brightness, height, width);
}

StreakParams sample_streak_params(std::uint64_t seed) {
    Rng rng(seed);
    StreakParams p;
    p.noise_count = static_cast<int>(rng.uniform_int(50, 200));
    p.length = static_cast<int>(rng.uniform_int(20, 50));
    p.angle_deg = rng.uniform(-30.0, 30.0);
    p.width = rng.uniform(3.0, 7.0);
    p.transparency = rng.uniform(0.4, 0.9);
    return p;
}

DropParams sample_drop_params(std::uint64_t seed) {
    Rng rng(seed);
    DropParams p;
    p.count = static_cast<int>(rng.uniform_int(10, 60));
    p.base_radius = rng.uniform(3.0, 12.0);
    p.mode_amplitudes = {0.0, rng.uniform(-0.15, 0.15), rng.uniform(-0.1, 0.1)};
    p.brightness = rng.uniform(0.5, 0.9);
    return p;
}

std::variant<StreakParams, DropParams> sample_params(MaskKind kind, std::uint64_t seed) {
    if (kind == MaskKind::Streak) {
        return sample_streak_params(seed);
    }
    return sample_drop_params(seed);
}

} // namespace nightrain::rain
