// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/image.hpp"

#include <filesystem>

namespace nightrain {

/// Reads an 8-bit grayscale or RGB PNG (alpha, if present, is dropped).
/// Intensities map to v/255. Throws IoError naming the path on a missing
/// file, a decode failure, or an unsupported bit depth / color type.
Image load_png(const std::filesystem::path& path);

/// Writes an 8-bit PNG with round(v*255) quantization. One channel becomes
/// grayscale, three become RGB. Output bytes depend only on the pixel values.
void save_png(const Image& img, const std::filesystem::path& path);

} // namespace nightrain
