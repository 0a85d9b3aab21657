// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/converter_io.hpp"

#include "nightrain/errors.hpp"
#include "text_util.hpp"

#include <cmath>
#include <cstdio>

namespace nightrain::csc {

namespace {

constexpr std::string_view kMagic = "nightrain-csc 1";

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

[[noreturn]] void bad(std::size_t line, const std::string& what) {
    throw ValidationError("converter line " + std::to_string(line) + ": " + what);
}

std::size_t header_value(std::string_view line, std::string_view key, std::size_t lineno) {
    const auto parts = detail::split(detail::trim(line), ' ');
    if (parts.size() != 2 || parts[0] != key) {
        bad(lineno, "expected '" + std::string(key) + " <n>'");
    }
    const auto v = detail::parse_number<std::size_t>(parts[1]);
    if (!v) {
        bad(lineno, "invalid " + std::string(key) + " value");
    }
    return *v;
}

} // namespace

std::string to_text(const LearnableConverter& c) {
    std::string out(kMagic);
    out += "\nhidden " + std::to_string(c.is_bypass() ? 0 : c.mlp()->hidden) + "\n";
    const auto params = c.parameters();
    out += "count " + std::to_string(params.size()) + "\n";
    for (double v : params) {
        out += format17(v);
        out += '\n';
    }
    return out;
}

LearnableConverter from_text(std::string_view text) {
    const auto ls = detail::lines(text);
    if (ls.empty() || detail::trim(ls[0]) != kMagic) {
        bad(1, "missing magic line '" + std::string(kMagic) + "'");
    }
    if (ls.size() < 3) {
        bad(ls.size() + 1, "truncated header");
    }
    const std::size_t hidden = header_value(ls[1], "hidden", 2);
    const std::size_t count = header_value(ls[2], "count", 3);
    if (hidden > 1'000'000) {
        bad(2, "hidden width out of range");
    }
    LearnableConverter c = hidden == 0 ? LearnableConverter::bypass(std::array<double, kMatrixEntries>{})
                                       : LearnableConverter::with_mlp({}, Mlp::zeros(static_cast<int>(hidden)));
    if (count != c.parameter_count()) {
        bad(3, "count " + std::to_string(count) + " does not match hidden width (expected " +
                   std::to_string(c.parameter_count()) + ")");
    }
    if (ls.size() != 3 + count) {
        bad(ls.size(), "expected " + std::to_string(count) + " parameter lines, found " +
                           std::to_string(ls.size() - 3));
    }
    std::vector<double> params(count);
    for (std::size_t i = 0; i < count; ++i) {
        const auto v = detail::parse_number<double>(ls[3 + i]);
        if (!v || !std::isfinite(*v)) {
            bad(4 + i, "invalid float '" + std::string(ls[3 + i]) + "'");
        }
        params[i] = *v;
    }
    c.set_parameters(params);
    return c;
}

void save_converter(const LearnableConverter& c, const std::filesystem::path& path) {
    detail::write_file(path, to_text(c));
}

LearnableConverter load_converter(const std::filesystem::path& path) {
    return from_text(detail::read_file(path));
}

} // namespace nightrain::csc
