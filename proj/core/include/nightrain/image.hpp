// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace nightrain {

/// Planar row-major intensity image with 1 or 3 channels.
///
/// Storage is `channels` consecutive planes of `height * width` doubles.
/// Every value is finite and in [0, 1]; out-of-range input is clamped on
/// construction and on `set`, non-finite input is rejected with ContractError.
class Image {
public:
    Image() = default;
    Image(int height, int width, int channels, double fill = 0.0);

    /// Takes ownership of `data` (length height*width*channels), clamping into [0, 1].
    static Image from_data(int height, int width, int channels, std::vector<double> data);

    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int channels() const noexcept { return channels_; }
    [[nodiscard]] std::size_t plane_size() const noexcept {
        return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
    }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    [[nodiscard]] double at(int c, int y, int x) const {
        return data_[index(c, y, x)];
    }
    void set(int c, int y, int x, double v);

    [[nodiscard]] std::span<const double> plane(int c) const;
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    /// Single-channel copy of plane `c`.
    [[nodiscard]] Image channel(int c) const;

    [[nodiscard]] bool same_shape(const Image& other) const noexcept {
        return height_ == other.height_ && width_ == other.width_ &&
               channels_ == other.channels_;
    }

    friend bool operator==(const Image&, const Image&) = default;

private:
    [[nodiscard]] std::size_t index(int c, int y, int x) const noexcept {
        return static_cast<std::size_t>(c) * plane_size() +
               static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int height_ = 0;
    int width_ = 0;
    int channels_ = 0;
    std::vector<double> data_;
};

/// Planar image without the [0, 1] range restriction.
///
/// Holds signed results such as chroma planes of a YCbCr conversion. Values
/// must still be finite.
class SignedImage {
public:
    SignedImage() = default;
    SignedImage(int height, int width, int channels, double fill = 0.0);
    static SignedImage from_data(int height, int width, int channels, std::vector<double> data);
    /// Widens an Image without changing any value.
    static SignedImage from_image(const Image& img);

    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int channels() const noexcept { return channels_; }
    [[nodiscard]] std::size_t plane_size() const noexcept {
        return static_cast<std::size_t>(height_) * static_cast<std::size_t>(width_);
    }

    [[nodiscard]] double at(int c, int y, int x) const { return data_[index(c, y, x)]; }
    void set(int c, int y, int x, double v);

    [[nodiscard]] std::span<const double> plane(int c) const;
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    /// Clamps every value into [0, 1].
    [[nodiscard]] Image clamped() const;

    friend bool operator==(const SignedImage&, const SignedImage&) = default;

private:
    [[nodiscard]] std::size_t index(int c, int y, int x) const noexcept {
        return static_cast<std::size_t>(c) * plane_size() +
               static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int height_ = 0;
    int width_ = 0;
    int channels_ = 0;
    std::vector<double> data_;
};

} // namespace nightrain
