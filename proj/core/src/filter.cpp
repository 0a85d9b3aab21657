// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/filter.hpp"

#include "nightrain/errors.hpp"

#include <algorithm>
#include <cmath>

namespace nightrain {

double Kernel::sum() const noexcept {
    double s = 0.0;
    for (double w : weights) {
        s += w;
    }
    return s;
}

namespace {

void check_kernel(const Kernel& k) {
    if (k.size < 1 ||
        k.weights.size() != static_cast<std::size_t>(k.size) * static_cast<std::size_t>(k.size)) {
        throw ContractError("kernel must be square with size >= 1");
    }
}

} // namespace

std::vector<double> convolve(std::span<const double> plane, int height, int width,
                             const Kernel& kernel, Border border) {
    check_kernel(kernel);
    if (plane.size() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width)) {
        throw ContractError("convolve: plane length does not match dimensions");
    }
    const int r = kernel.radius();
    std::vector<double> out(plane.size(), 0.0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double acc = 0.0;
            double wsum = 0.0;
            for (int ky = 0; ky < kernel.size; ++ky) {
                int sy = y - (ky - r);
                if (sy < 0 || sy >= height) {
                    if (border != Border::Replicate) {
                        continue;
                    }
                    sy = std::clamp(sy, 0, height - 1);
                }
                for (int kx = 0; kx < kernel.size; ++kx) {
                    int sx = x - (kx - r);
                    if (sx < 0 || sx >= width) {
                        if (border != Border::Replicate) {
                            continue;
                        }
                        sx = std::clamp(sx, 0, width - 1);
                    }
                    const double w = kernel.at(ky, kx);
                    acc += w * plane[static_cast<std::size_t>(sy) * static_cast<std::size_t>(width) +
                                     static_cast<std::size_t>(sx)];
                    wsum += w;
                }
            }
            if (border == Border::Renormalize && wsum != 0.0) {
                acc /= wsum;
            }
            out[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) + static_cast<std::size_t>(x)] = acc;
        }
    }
    return out;
}

std::vector<double> convolve_sparse(std::span<const double> plane, int height, int width,
                                    const Kernel& kernel) {
    check_kernel(kernel);
    if (plane.size() != static_cast<std::size_t>(height) * static_cast<std::size_t>(width)) {
        throw ContractError("convolve: plane length does not match dimensions");
    }
    const int r = kernel.radius();
    std::vector<double> out(plane.size(), 0.0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double v = plane[static_cast<std::size_t>(y) * static_cast<std::size_t>(width) +
                                   static_cast<std::size_t>(x)];
            if (v == 0.0) {
                continue;
            }
            for (int ky = 0; ky < kernel.size; ++ky) {
                const int ty = y + ky - r;
                if (ty < 0 || ty >= height) {
                    continue;
                }
                for (int kx = 0; kx < kernel.size; ++kx) {
                    const int tx = x + kx - r;
                    if (tx < 0 || tx >= width) {
                        continue;
                    }
                    const double w = kernel.at(ky, kx);
                    if (w != 0.0) {
                        out[static_cast<std::size_t>(ty) * static_cast<std::size_t>(width) +
                            static_cast<std::size_t>(tx)] += v * w;
                    }
                }
            }
        }
    }
    return out;
}

Kernel binomial3() {
    Kernel k;
    k.size = 3;
    k.weights = {1.0 / 16, 2.0 / 16, 1.0 / 16, 2.0 / 16, 4.0 / 16, 2.0 / 16, 1.0 / 16, 2.0 / 16, 1.0 / 16};
    return k;
}

Kernel laplacian3() {
    Kernel k;
    k.size = 3;
    k.weights = {0.0, 1.0, 0.0, 1.0, -4.0, 1.0, 0.0, 1.0, 0.0};
    return k;
}

Kernel gaussian_kernel(int radius, double sigma) {
    if (radius < 0) {
        throw ContractError("gaussian_kernel: radius must be non-negative");
    }
    if (!(sigma > 0.0)) {
        throw ContractError("gaussian_kernel: sigma must be positive");
    }
    Kernel k;
    k.size = 2 * radius + 1;
    k.weights.assign(static_cast<std::size_t>(k.size) * static_cast<std::size_t>(k.size), 0.0);
    double sum = 0.0;
    for (int dy = -radius; dy <= radius; ++dy) {
        for (int dx = -radius; dx <= radius; ++dx) {
            const double d2 = dx * dx + dy * dy;
            const double w = std::isinf(sigma) ? 1.0 : std::exp(-d2 / (2.0 * sigma * sigma));
            k.weights[static_cast<std::size_t>((dy + radius) * k.size + (dx + radius))] = w;
            sum += w;
        }
    }
    for (double& w : k.weights) {
        w /= sum;
    }
    return k;
}

} // namespace nightrain
