// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/png_io.hpp"

#include "nightrain/errors.hpp"

#include <png.h>

#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace nightrain {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const noexcept {
        if (f != nullptr) {
            std::fclose(f);
        }
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

// libpng reports errors through longjmp; the message is stashed here first.
struct ErrorState {
    std::string message;
};

void on_png_error(png_structp png, png_const_charp msg) {
    auto* state = static_cast<ErrorState*>(png_get_error_ptr(png));
    if (state != nullptr) {
        state->message = msg;
    }
    png_longjmp(png, 1);
}

void on_png_warning(png_structp, png_const_charp) {}

[[noreturn]] void fail(const std::filesystem::path& path, const std::string& what) {
    throw IoError(path.string() + ": " + what);
}

struct Decoded {
    int height = 0;
    int width = 0;
    int channels = 0;
    std::vector<png_byte> pixels;
    std::vector<png_bytep> rows;
    std::string reject;
};

void read_pixels(png_structp png, png_infop info, Decoded& out) {
    png_read_info(png, info);
    const int bit_depth = png_get_bit_depth(png, info);
    const int color_type = png_get_color_type(png, info);
    if (bit_depth != 8) {
        out.reject = "unsupported bit depth " + std::to_string(bit_depth) + " (only 8-bit PNG is accepted)";
        return;
    }
    if (color_type == PNG_COLOR_TYPE_PALETTE) {
        out.reject = "unsupported color type: palette";
        return;
    }
    if (color_type & PNG_COLOR_MASK_ALPHA) {
        png_set_strip_alpha(png);
    }
    png_read_update_info(png, info);
    out.height = static_cast<int>(png_get_image_height(png, info));
    out.width = static_cast<int>(png_get_image_width(png, info));
    out.channels = png_get_channels(png, info);
    const std::size_t rowbytes = png_get_rowbytes(png, info);
    out.pixels.resize(rowbytes * static_cast<std::size_t>(out.height));
    out.rows.resize(static_cast<std::size_t>(out.height));
    for (std::size_t y = 0; y < out.rows.size(); ++y) {
        out.rows[y] = out.pixels.data() + rowbytes * y;
    }
    png_read_image(png, out.rows.data());
    png_read_end(png, nullptr);
}

} // namespace

Image load_png(const std::filesystem::path& path) {
    FilePtr file(std::fopen(path.c_str(), "rb"));
    if (!file) {
        fail(path, "cannot open file for reading");
    }
    unsigned char sig[8] = {};
    if (std::fread(sig, 1, sizeof sig, file.get()) != sizeof sig || png_sig_cmp(sig, 0, sizeof sig) != 0) {
        fail(path, "decode error: not a PNG file");
    }

    ErrorState state;
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, &state, on_png_error, on_png_warning);
    if (png == nullptr) {
        fail(path, "decode error: libpng initialization failed");
    }
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        fail(path, "decode error: libpng initialization failed");
    }

    // Kept in memory (not registers) so the values survive a longjmp.
    Decoded decoded;
    if (setjmp(png_jmpbuf(png)) != 0) {
        png_destroy_read_struct(&png, &info, nullptr);
        fail(path, "decode error: " + state.message);
    }
    png_init_io(png, file.get());
    png_set_sig_bytes(png, sizeof sig);
    read_pixels(png, info, decoded);
    png_destroy_read_struct(&png, &info, nullptr);
    if (!decoded.reject.empty()) {
        fail(path, "decode error: " + decoded.reject);
    }
    const int height = decoded.height;
    const int width = decoded.width;
    const int channels = decoded.channels;
    const auto& pixels = decoded.pixels;
    if (channels != 1 && channels != 3) {
        fail(path, "decode error: unexpected channel count " + std::to_string(channels));
    }

    const std::size_t plane = static_cast<std::size_t>(height) * static_cast<std::size_t>(width);
    std::vector<double> data(plane * static_cast<std::size_t>(channels));
    for (std::size_t i = 0; i < plane; ++i) {
        for (int c = 0; c < channels; ++c) {
            data[static_cast<std::size_t>(c) * plane + i] =
                pixels[i * static_cast<std::size_t>(channels) + static_cast<std::size_t>(c)] / 255.0;
        }
    }
    return Image::from_data(height, width, channels, std::move(data));
}

void save_png(const Image& img, const std::filesystem::path& path) {
    if (img.empty()) {
        throw ContractError("cannot save an empty image");
    }
    FilePtr file(std::fopen(path.c_str(), "wb"));
    if (!file) {
        fail(path, "cannot open file for writing");
    }

    const int channels = img.channels();
    const std::size_t plane = img.plane_size();
    std::vector<png_byte> pixels(plane * static_cast<std::size_t>(channels));
    const auto data = img.data();
    for (std::size_t i = 0; i < plane; ++i) {
        for (int c = 0; c < channels; ++c) {
            const double v = data[static_cast<std::size_t>(c) * plane + i];
            pixels[i * static_cast<std::size_t>(channels) + static_cast<std::size_t>(c)] =
                static_cast<png_byte>(std::lround(v * 255.0));
        }
    }

    ErrorState state;
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, &state, on_png_error, on_png_warning);
    if (png == nullptr) {
        fail(path, "encode error: libpng initialization failed");
    }
    png_infop info = png_create_info_struct(png);
    if (info == nullptr) {
        png_destroy_write_struct(&png, nullptr);
        fail(path, "encode error: libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png)) != 0) {
        png_destroy_write_struct(&png, &info);
        fail(path, "encode error: " + state.message);
    }

    png_init_io(png, file.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(img.width()), static_cast<png_uint_32>(img.height()), 8,
                 channels == 1 ? PNG_COLOR_TYPE_GRAY : PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    png_set_compression_level(png, 6);
    png_write_info(png, info);
    const std::size_t rowbytes = static_cast<std::size_t>(img.width()) * static_cast<std::size_t>(channels);
    for (int y = 0; y < img.height(); ++y) {
        png_write_row(png, pixels.data() + rowbytes * static_cast<std::size_t>(y));
    }
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);

    if (std::fflush(file.get()) != 0 || std::ferror(file.get()) != 0) {
        fail(path, "write error");
    }
}

} // namespace nightrain
