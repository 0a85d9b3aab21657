// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/colorspace.hpp"
#include "nightrain/image.hpp"
#include "nightrain/random.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <string>
#include <vector>

namespace nightrain::testing {

/// Uniform random RGB (or gray) image.
inline Image random_image(int height, int width, int channels, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> d(static_cast<std::size_t>(height) * width * channels);
    for (double& v : d) {
        v = rng.uniform01();
    }
    return Image::from_data(height, width, channels, std::move(d));
}

/// Dark scene with a few colored Gaussian light sources, a stand-in for a
/// nighttime street photograph.
inline Image night_background(int height, int width, std::uint64_t seed) {
    Rng rng(seed);
    double base[3];
    for (double& b : base) {
        b = rng.uniform(0.02, 0.08);
    }
    struct Light {
        double x, y, r, a;
        double color[3];
    };
    std::vector<Light> lights(static_cast<std::size_t>(rng.uniform_int(2, 5)));
    for (Light& l : lights) {
        l.x = rng.uniform(0.0, width);
        l.y = rng.uniform(0.0, height);
        l.r = rng.uniform(0.08, 0.2) * width;
        for (double& c : l.color) {
            c = rng.uniform(0.6, 1.0);
        }
        l.a = rng.uniform(0.7, 1.2);
    }
    const std::size_t n = static_cast<std::size_t>(height) * width;
    std::vector<double> d(3 * n);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            for (int c = 0; c < 3; ++c) {
                double v = base[c] * (0.8 + 0.4 * rng.uniform01());
                for (const Light& l : lights) {
                    const double d2 = ((x - l.x) * (x - l.x) + (y - l.y) * (y - l.y)) / (l.r * l.r);
                    v += l.a * l.color[c] * std::exp(-d2);
                }
                d[c * n + static_cast<std::size_t>(y) * width + x] = std::min(v, 1.0);
            }
        }
    }
    return Image::from_data(height, width, 3, std::move(d));
}

/// Dominant line direction of a single-channel plane from its structure
/// tensor, in degrees from the vertical (positive leans towards +x going down).
inline double dominant_orientation_deg(const Image& plane) {
    double jxx = 0.0;
    double jyy = 0.0;
    double jxy = 0.0;
    for (int y = 1; y + 1 < plane.height(); ++y) {
        for (int x = 1; x + 1 < plane.width(); ++x) {
            const double gx = 0.5 * (plane.at(0, y, x + 1) - plane.at(0, y, x - 1));
            const double gy = 0.5 * (plane.at(0, y + 1, x) - plane.at(0, y - 1, x));
            jxx += gx * gx;
            jyy += gy * gy;
            jxy += gx * gy;
        }
    }
    // Gradients point across the lines; the line direction is perpendicular.
    const double phi = 0.5 * std::atan2(2.0 * jxy, jxx - jyy);
    double dx = -std::sin(phi);
    double dy = std::cos(phi);
    if (dy < 0.0) {
        dx = -dx;
        dy = -dy;
    }
    return std::atan2(dx, dy) * 180.0 / std::numbers::pi;
}

/// Checks the canonical row sums (1, 0, 0) in exact decimal arithmetic. Every
/// coefficient must be the double nearest to an integer number of thousandths,
/// and those integers must sum to (1000, 0, 0). The binary double sums are
/// additionally required to be within 2 ulp of the target.
inline bool canonical_rows_sum_exactly() {
    const color::ConversionMatrix w = color::canonical_matrix();
    const std::array<long, 3> want{1000, 0, 0};
    for (int r = 0; r < 3; ++r) {
        long thousandths = 0;
        for (int c = 0; c < 3; ++c) {
            const long k = std::lround(w(r, c) * 1000.0);
            if (static_cast<double>(k) / 1000.0 != w(r, c)) {
                return false;
            }
            thousandths += k;
        }
        if (thousandths != want[static_cast<std::size_t>(r)]) {
            return false;
        }
        const auto i = static_cast<std::size_t>(r);
        if (std::abs(w.row_sums()[i] - static_cast<double>(want[i]) / 1000.0) > 0x1p-51) {
            return false;
        }
    }
    return true;
}

/// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        Rng rng(std::hash<std::string>{}(tag) ^ static_cast<std::uint64_t>(
                                                      std::filesystem::file_time_type::clock::now()
                                                          .time_since_epoch()
                                                          .count()));
        path_ = std::filesystem::temp_directory_path() /
                ("nightrain-" + tag + "-" + std::to_string(rng.next() % 1000000007ULL));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    [[nodiscard]] const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

} // namespace nightrain::testing
