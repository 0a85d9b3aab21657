// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/compositor.hpp"

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nightrain {

/// Flat `key = value` synthesis configuration. Blank lines and lines starting
/// with '#' are ignored. Recognized keys:
///
///   subset               RS | RD | SD
///   tau1, tau2           illumination thresholds
///   merge_mode           linear | conv
///   use_illumination     true | false
///   use_defocus          true | false
///   defocus_radius       integer pixels
///   seed                 unsigned 64-bit master seed
///   streak.noise_count, streak.length, streak.angle, streak.width,
///   streak.transparency  fix the corresponding sampled streak parameter
///   drop.count, drop.radius, drop.brightness
///                        fix the corresponding sampled drop parameter
///
/// Unset keys keep the SynthesisConfig::full defaults. Throws ValidationError
/// naming the line and key on unknown keys, duplicates or bad values.
compose::SynthesisConfig parse_config(std::string_view text);
compose::SynthesisConfig load_config(const std::filesystem::path& path);

/// Every key with its effective value, in the order listed above. Unset
/// overrides are omitted.
std::vector<std::pair<std::string, std::string>> config_entries(const compose::SynthesisConfig& cfg);
std::string to_text(const compose::SynthesisConfig& cfg);

} // namespace nightrain
