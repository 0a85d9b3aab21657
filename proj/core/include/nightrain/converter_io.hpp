// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/csclab.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace nightrain::csc {

/// Converter weight text format:
///
///     nightrain-csc 1
///     hidden <h>            (0 in bypass mode)
///     count <n>             (== parameter_count())
///     <n lines, one decimal float each, in parameters() order>
///
/// Floats use 17 significant digits, so a save/load cycle is exact.
std::string to_text(const LearnableConverter& c);
/// Throws ValidationError naming the offending line.
LearnableConverter from_text(std::string_view text);

void save_converter(const LearnableConverter& c, const std::filesystem::path& path);
LearnableConverter load_converter(const std::filesystem::path& path);

} // namespace nightrain::csc
