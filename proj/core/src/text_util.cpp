// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "text_util.hpp"

#include "nightrain/errors.hpp"

#include <fstream>
#include <sstream>

namespace nightrain::detail {

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError(path.string() + ": cannot open file for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError(path.string() + ": cannot open file for writing");
    }
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) {
        throw IoError(path.string() + ": write error");
    }
}

} // namespace nightrain::detail
