// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#pragma once

#include "nightrain/compositor.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace nightrain {

inline constexpr int kManifestVersion = 1;

using KeyValues = std::vector<std::pair<std::string, std::string>>;

struct ManifestEntry {
    std::size_t index = 0;
    std::string background_path;  ///< as given to the builder
    std::string rainy_path;       ///< relative to the manifest directory
    std::string clean_path;       ///< relative to the manifest directory
    std::uint64_t derived_seed = 0;
    double tau1 = 0.2;
    double tau2 = 0.8;
    KeyValues params;             ///< sampled parameters, flattened

    friend bool operator==(const ManifestEntry&, const ManifestEntry&) = default;
};

/// Record of one dataset build.
///
/// Line-oriented, tab-separated text:
///
///     nightrain-manifest<TAB>1
///     master_seed<TAB><u64>
///     subset<TAB>RS|RD|SD
///     config<TAB><key>=<value>          (one line per effective config key)
///     entry<TAB>index=..<TAB>seed=..<TAB>background=..<TAB>rainy=..<TAB>clean=..
///          <TAB>tau1=..<TAB>tau2=..<TAB><param>=..                    (one per pair)
struct DatasetManifest {
    int version = kManifestVersion;
    std::uint64_t master_seed = 0;
    compose::Subset subset = compose::Subset::RS;
    KeyValues config;
    std::vector<ManifestEntry> entries;

    friend bool operator==(const DatasetManifest&, const DatasetManifest&) = default;
};

std::string to_text(const DatasetManifest& m);
/// Throws ValidationError naming the offending line.
DatasetManifest parse_manifest(std::string_view text);

void save_manifest(const DatasetManifest& m, const std::filesystem::path& path);
DatasetManifest load_manifest(const std::filesystem::path& path);

/// Sampled parameters as manifest key/value pairs ("streak.length" etc.).
KeyValues flatten_params(const compose::SynthesisResult& r);

} // namespace nightrain
