// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include <span>
#include <vector>

namespace nightrain {

/// Square convolution kernel, row-major, anchored at (size/2, size/2). Odd
/// sizes are centered; even sizes lean one tap towards the top-left.
struct Kernel {
    int size = 1;
    std::vector<double> weights{1.0};

    [[nodiscard]] int radius() const noexcept { return size / 2; }
    [[nodiscard]] double at(int ky, int kx) const {
        return weights[static_cast<std::size_t>(ky * size + kx)];
    }
    [[nodiscard]] double sum() const noexcept;
};

enum class Border {
    Zero,        ///< outside samples read as 0
    Renormalize, ///< weights restricted to the in-image support and rescaled to sum 1
    Replicate,   ///< outside samples read the nearest edge pixel
};

/// 2-D convolution of a single plane (height*width, row-major).
///
/// Evaluation order is fixed, so results are bit-identical across runs.
std::vector<double> convolve(std::span<const double> plane, int height, int width,
                             const Kernel& kernel, Border border);

/// Sparse-friendly variant for Border::Zero: scatters the kernel from each
/// nonzero source pixel. Same result as `convolve` up to summation order.
std::vector<double> convolve_sparse(std::span<const double> plane, int height, int width,
                                    const Kernel& kernel);

/// Normalized 1-2-1 outer-product smoothing kernel (weights sum to 16/16).
Kernel binomial3();

/// 3x3 discrete Laplacian [0 1 0; 1 -4 1; 0 1 0].
Kernel laplacian3();

/// Normalized isotropic Gaussian, radius `radius`, std-dev `sigma` (inf gives a box).
Kernel gaussian_kernel(int radius, double sigma);

} // namespace nightrain
