// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/manifest.hpp"

#include "nightrain/errors.hpp"
#include "text_util.hpp"

namespace nightrain {

namespace {

constexpr std::string_view kMagic = "nightrain-manifest";

[[noreturn]] void bad(std::size_t line, const std::string& what) {
    throw ValidationError("manifest line " + std::to_string(line) + ": " + what);
}

std::string field(std::string_view key, std::string_view value) {
    std::string s("\t");
    s += key;
    s += '=';
    s += value;
    return s;
}

void require_clean(std::string_view v, std::string_view what) {
    if (v.find_first_of("\t\n\r") != std::string_view::npos) {
        throw ContractError(std::string(what) + " must not contain tabs or newlines");
    }
}

std::pair<std::string_view, std::string_view> key_value(std::string_view f, std::size_t lineno) {
    const auto eq = f.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        bad(lineno, "expected key=value, got '" + std::string(f) + "'");
    }
    return {f.substr(0, eq), f.substr(eq + 1)};
}

ManifestEntry parse_entry(const std::vector<std::string_view>& fields, std::size_t lineno) {
    ManifestEntry e;
    bool has_index = false, has_seed = false, has_bg = false, has_rainy = false, has_clean = false;
    bool has_tau1 = false, has_tau2 = false;
    for (std::size_t i = 1; i < fields.size(); ++i) {
        const auto [k, v] = key_value(fields[i], lineno);
        auto num_err = [&] { bad(lineno, "invalid value for '" + std::string(k) + "'"); };
        if (k == "index") {
            const auto n = detail::parse_number<std::size_t>(v);
            if (!n) num_err();
            e.index = *n;
            has_index = true;
        } else if (k == "seed") {
            const auto n = detail::parse_number<std::uint64_t>(v);
            if (!n) num_err();
            e.derived_seed = *n;
            has_seed = true;
        } else if (k == "background") {
            e.background_path = v;
            has_bg = true;
        } else if (k == "rainy") {
            e.rainy_path = v;
            has_rainy = true;
        } else if (k == "clean") {
            e.clean_path = v;
            has_clean = true;
        } else if (k == "tau1") {
            const auto n = detail::parse_number<double>(v);
            if (!n) num_err();
            e.tau1 = *n;
            has_tau1 = true;
        } else if (k == "tau2") {
            const auto n = detail::parse_number<double>(v);
            if (!n) num_err();
            e.tau2 = *n;
            has_tau2 = true;
        } else {
            e.params.emplace_back(std::string(k), std::string(v));
        }
    }
    if (!(has_index && has_seed && has_bg && has_rainy && has_clean && has_tau1 && has_tau2)) {
        bad(lineno, "entry is missing one of index, seed, background, rainy, clean, tau1, tau2");
    }
    return e;
}

} // namespace

std::string to_text(const DatasetManifest& m) {
    std::string out;
    out += std::string(kMagic) + "\t" + std::to_string(m.version) + "\n";
    out += "master_seed\t" + std::to_string(m.master_seed) + "\n";
    out += "subset\t" + std::string(compose::subset_name(m.subset)) + "\n";
    for (const auto& [k, v] : m.config) {
        require_clean(k, "config key");
        require_clean(v, "config value");
        out += "config\t" + k + "=" + v + "\n";
    }
    for (const auto& e : m.entries) {
        require_clean(e.background_path, "background path");
        require_clean(e.rainy_path, "rainy path");
        require_clean(e.clean_path, "clean path");
        out += "entry";
        out += field("index", std::to_string(e.index));
        out += field("seed", std::to_string(e.derived_seed));
        out += field("background", e.background_path);
        out += field("rainy", e.rainy_path);
        out += field("clean", e.clean_path);
        out += field("tau1", detail::format_double(e.tau1));
        out += field("tau2", detail::format_double(e.tau2));
        for (const auto& [k, v] : e.params) {
            out += field(k, v);
        }
        out += "\n";
    }
    return out;
}

DatasetManifest parse_manifest(std::string_view text) {
    const auto ls = detail::lines(text);
    if (ls.size() < 3) {
        bad(ls.size() + 1, "truncated manifest header");
    }
    DatasetManifest m;
    {
        const auto f = detail::split(ls[0], '\t');
        if (f.size() != 2 || f[0] != kMagic) {
            bad(1, "missing 'nightrain-manifest<TAB><version>' header");
        }
        const auto v = detail::parse_number<int>(f[1]);
        if (!v || *v != kManifestVersion) {
            bad(1, "unsupported manifest version '" + std::string(f[1]) + "'");
        }
        m.version = *v;
    }
    {
        const auto f = detail::split(ls[1], '\t');
        const auto v = f.size() == 2 && f[0] == "master_seed" ? detail::parse_number<std::uint64_t>(f[1])
                                                               : std::nullopt;
        if (!v) {
            bad(2, "expected 'master_seed<TAB><u64>'");
        }
        m.master_seed = *v;
    }
    {
        const auto f = detail::split(ls[2], '\t');
        const auto s = f.size() == 2 && f[0] == "subset" ? compose::parse_subset(f[1]) : std::nullopt;
        if (!s) {
            bad(3, "expected 'subset<TAB>RS|RD|SD'");
        }
        m.subset = *s;
    }
    for (std::size_t i = 3; i < ls.size(); ++i) {
        const std::size_t lineno = i + 1;
        if (ls[i].empty()) {
            continue;
        }
        const auto f = detail::split(ls[i], '\t');
        if (f[0] == "config") {
            if (f.size() != 2) {
                bad(lineno, "config line must hold one key=value");
            }
            const auto [k, v] = key_value(f[1], lineno);
            m.config.emplace_back(std::string(k), std::string(v));
        } else if (f[0] == "entry") {
            m.entries.push_back(parse_entry(f, lineno));
        } else {
            bad(lineno, "unknown record '" + std::string(f[0]) + "'");
        }
    }
    return m;
}

void save_manifest(const DatasetManifest& m, const std::filesystem::path& path) {
    detail::write_file(path, to_text(m));
}

DatasetManifest load_manifest(const std::filesystem::path& path) {
    const std::string text = detail::read_file(path);
    try {
        return parse_manifest(text);
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

KeyValues flatten_params(const compose::SynthesisResult& r) {
    using detail::format_double;
    KeyValues kv;
    if (r.streak_params) {
        const auto& p = *r.streak_params;
        kv.emplace_back("streak.noise_count", std::to_string(p.noise_count));
        kv.emplace_back("streak.length", std::to_string(p.length));
        kv.emplace_back("streak.angle", format_double(p.angle_deg));
        kv.emplace_back("streak.width", format_double(p.width));
        kv.emplace_back("streak.transparency", format_double(p.transparency));
    }
    if (r.drop_params) {
        const auto& p = *r.drop_params;
        kv.emplace_back("drop.count", std::to_string(p.count));
        kv.emplace_back("drop.radius", format_double(p.base_radius));
        kv.emplace_back("drop.brightness", format_double(p.brightness));
        std::string modes;
        for (std::size_t k = 0; k < p.mode_amplitudes.size(); ++k) {
            if (k > 0) {
                modes += ',';
            }
            modes += format_double(p.mode_amplitudes[k]);
        }
        kv.emplace_back("drop.modes", modes);
    }
    return kv;
}

} // namespace nightrain
