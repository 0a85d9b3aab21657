// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/image.hpp"

#include "nightrain/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace nightrain {

namespace {

void check_shape(int height, int width, int channels, bool any_channels) {
    if (height < 0 || width < 0) {
        throw ContractError("image dimensions must be non-negative");
    }
    if (!any_channels && channels != 1 && channels != 3) {
        throw ContractError("image must have 1 or 3 channels, got " + std::to_string(channels));
    }
    if (any_channels && channels < 1) {
        throw ContractError("image must have at least one channel");
    }
}

void check_finite(double v) {
    if (!std::isfinite(v)) {
        throw ContractError("image values must be finite");
    }
}

std::size_t expected_size(int height, int width, int channels) {
    return static_cast<std::size_t>(height) * static_cast<std::size_t>(width) *
           static_cast<std::size_t>(channels);
}

} // namespace

Image::Image(int height, int width, int channels, double fill)
    : height_(height), width_(width), channels_(channels) {
    check_shape(height, width, channels, false);
    check_finite(fill);
    data_.assign(expected_size(height, width, channels), std::clamp(fill, 0.0, 1.0));
}

Image Image::from_data(int height, int width, int channels, std::vector<double> data) {
    check_shape(height, width, channels, false);
    if (data.size() != expected_size(height, width, channels)) {
        throw ContractError("image data length does not match height*width*channels");
    }
    for (double& v : data) {
        check_finite(v);
        v = std::clamp(v, 0.0, 1.0);
    }
    Image img;
    img.height_ = height;
    img.width_ = width;
    img.channels_ = channels;
    img.data_ = std::move(data);
    return img;
}

void Image::set(int c, int y, int x, double v) {
    check_finite(v);
    data_[index(c, y, x)] = std::clamp(v, 0.0, 1.0);
}

std::span<const double> Image::plane(int c) const {
    if (c < 0 || c >= channels_) {
        throw ContractError("channel index out of range");
    }
    return std::span<const double>(data_).subspan(static_cast<std::size_t>(c) * plane_size(),
                                                  plane_size());
}

Image Image::channel(int c) const {
    auto p = plane(c);
    return from_data(height_, width_, 1, std::vector<double>(p.begin(), p.end()));
}

SignedImage::SignedImage(int height, int width, int channels, double fill)
    : height_(height), width_(width), channels_(channels) {
    check_shape(height, width, channels, true);
    check_finite(fill);
    data_.assign(expected_size(height, width, channels), fill);
}

SignedImage SignedImage::from_data(int height, int width, int channels, std::vector<double> data) {
    check_shape(height, width, channels, true);
    if (data.size() != expected_size(height, width, channels)) {
        throw ContractError("image data length does not match height*width*channels");
    }
    for (double v : data) {
        check_finite(v);
    }
    SignedImage img;
    img.height_ = height;
    img.width_ = width;
    img.channels_ = channels;
    img.data_ = std::move(data);
    return img;
}

SignedImage SignedImage::from_image(const Image& img) {
    auto d = img.data();
    return from_data(img.height(), img.width(), img.channels(),
                     std::vector<double>(d.begin(), d.end()));
}

void SignedImage::set(int c, int y, int x, double v) {
    check_finite(v);
    data_[index(c, y, x)] = v;
}

std::span<const double> SignedImage::plane(int c) const {
    if (c < 0 || c >= channels_) {
        throw ContractError("channel index out of range");
    }
    return std::span<const double>(data_).subspan(static_cast<std::size_t>(c) * plane_size(),
                                                  plane_size());
}

Image SignedImage::clamped() const {
    return Image::from_data(height_, width_, channels_, data_);
}

} // namespace nightrain
