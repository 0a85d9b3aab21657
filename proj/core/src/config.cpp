// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the nightrain Project.

#include "nightrain/config.hpp"

#include "nightrain/errors.hpp"
#include "text_util.hpp"

#include <set>

namespace nightrain {

namespace {

[[noreturn]] void bad(std::size_t line, std::string_view key, const std::string& what) {
    throw ValidationError("config line " + std::to_string(line) + ", key '" + std::string(key) + "': " + what);
}

template <typename T>
T number(std::size_t line, std::string_view key, std::string_view value) {
    const auto v = detail::parse_number<T>(value);
    if (!v) {
        bad(line, key, "invalid number '" + std::string(value) + "'");
    }
    return *v;
}

bool boolean(std::size_t line, std::string_view key, std::string_view value) {
    const auto v = detail::parse_bool(value);
    if (!v) {
        bad(line, key, "expected true or false, got '" + std::string(value) + "'");
    }
    return *v;
}

} // namespace

compose::SynthesisConfig parse_config(std::string_view text) {
    compose::SynthesisConfig cfg = compose::SynthesisConfig::full(compose::Subset::RS, 0);
    double tau1 = cfg.thresholds.tau1();
    double tau2 = cfg.thresholds.tau2();
    std::size_t tau_line = 0;
    std::set<std::string, std::less<>> seen;

    const auto ls = detail::lines(text);
    for (std::size_t i = 0; i < ls.size(); ++i) {
        const std::size_t lineno = i + 1;
        const auto line = detail::trim(ls[i]);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            bad(lineno, line, "expected key = value");
        }
        const auto key = detail::trim(line.substr(0, eq));
        const auto value = detail::trim(line.substr(eq + 1));
        if (!seen.emplace(key).second) {
            bad(lineno, key, "duplicate key");
        }

        if (key == "subset") {
            const auto s = compose::parse_subset(value);
            if (!s) {
                bad(lineno, key, "expected RS, RD or SD, got '" + std::string(value) + "'");
            }
            cfg.kind = *s;
        } else if (key == "tau1") {
            tau1 = number<double>(lineno, key, value);
            tau_line = lineno;
        } else if (key == "tau2") {
            tau2 = number<double>(lineno, key, value);
            tau_line = lineno;
        } else if (key == "merge_mode") {
            const auto m = compose::parse_merge_mode(value);
            if (!m) {
                bad(lineno, key, "expected linear or conv, got '" + std::string(value) + "'");
            }
            cfg.merge_mode = *m;
        } else if (key == "use_illumination") {
            cfg.use_illumination = boolean(lineno, key, value);
        } else if (key == "use_defocus") {
            cfg.use_defocus = boolean(lineno, key, value);
        } else if (key == "defocus_radius") {
            cfg.defocus_radius = number<int>(lineno, key, value);
            if (cfg.defocus_radius < 0) {
                bad(lineno, key, "must be >= 0");
            }
        } else if (key == "seed") {
            cfg.seed = number<std::uint64_t>(lineno, key, value);
        } else if (key == "streak.noise_count") {
            cfg.streak.noise_count = number<int>(lineno, key, value);
        } else if (key == "streak.length") {
            cfg.streak.length = number<int>(lineno, key, value);
        } else if (key == "streak.angle") {
            cfg.streak.angle_deg = number<double>(lineno, key, value);
        } else if (key == "streak.width") {
            cfg.streak.width = number<double>(lineno, key, value);
        } else if (key == "streak.transparency") {
            cfg.streak.transparency = number<double>(lineno, key, value);
        } else if (key == "drop.count") {
            cfg.drop.count = number<int>(lineno, key, value);
        } else if (key == "drop.radius") {
            cfg.drop.base_radius = number<double>(lineno, key, value);
        } else if (key == "drop.brightness") {
            cfg.drop.brightness = number<double>(lineno, key, value);
        } else {
            bad(lineno, key, "unknown key");
        }
    }
    try {
        cfg.thresholds = illum::ThresholdPair(tau1, tau2);
    } catch (const ContractError& e) {
        bad(tau_line, "tau1/tau2", e.what());
    }
    return cfg;
}

compose::SynthesisConfig load_config(const std::filesystem::path& path) {
    const std::string text = detail::read_file(path);
    try {
        return parse_config(text);
    } catch (const ValidationError& e) {
        throw ValidationError(path.string() + ": " + e.what());
    }
}

std::vector<std::pair<std::string, std::string>> config_entries(const compose::SynthesisConfig& cfg) {
    using detail::format_double;
    std::vector<std::pair<std::string, std::string>> kv;
    kv.emplace_back("subset", std::string(compose::subset_name(cfg.kind)));
    kv.emplace_back("tau1", format_double(cfg.thresholds.tau1()));
    kv.emplace_back("tau2", format_double(cfg.thresholds.tau2()));
    kv.emplace_back("merge_mode", std::string(compose::merge_mode_name(cfg.merge_mode)));
    kv.emplace_back("use_illumination", cfg.use_illumination ? "true" : "false");
    kv.emplace_back("use_defocus", cfg.use_defocus ? "true" : "false");
    kv.emplace_back("defocus_radius", std::to_string(cfg.defocus_radius));
    kv.emplace_back("seed", std::to_string(cfg.seed));
    const auto& s = cfg.streak;
    if (s.noise_count) kv.emplace_back("streak.noise_count", std::to_string(*s.noise_count));
    if (s.length) kv.emplace_back("streak.length", std::to_string(*s.length));
    if (s.angle_deg) kv.emplace_back("streak.angle", format_double(*s.angle_deg));
    if (s.width) kv.emplace_back("streak.width", format_double(*s.width));
    if (s.transparency) kv.emplace_back("streak.transparency", format_double(*s.transparency));
    const auto& d = cfg.drop;
    if (d.count) kv.emplace_back("drop.count", std::to_string(*d.count));
    if (d.base_radius) kv.emplace_back("drop.radius", format_double(*d.base_radius));
    if (d.brightness) kv.emplace_back("drop.brightness", format_double(*d.brightness));
    return kv;
}

std::string to_text(const compose::SynthesisConfig& cfg) {
    std::string out;
    for (const auto& [k, v] : config_entries(cfg)) {
        out += k + " = " + v + "\n";
    }
    return out;
}

} // namespace nightrain
