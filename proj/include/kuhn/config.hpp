#pragma once
// Flat `key = value` config file for the CLI. Unknown keys fail fast.

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

#include "kuhn/error.hpp"
#include "kuhn/tracker.hpp"

namespace kuhn {

struct CliConfig {
    std::string corpus_dir = "corpus";
    TrackerConfig tracker;
    std::optional<std::string> lexicon_path;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() &&
           (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    std::size_t consumed = 0;
    try {
        if constexpr (std::is_floating_point_v<T>)
            out = static_cast<T>(std::stod(std::string(value), &consumed));
        else
            out = static_cast<T>(std::stoll(std::string(value), &consumed));
    } catch (const std::exception&) {
        consumed = 0;
    }
    if (consumed != value.size() || value.empty())
        throw Error(ErrorCode::ConfigError,
                    std::string(key) + ": '" + std::string(value) +
                        "' is not a number");
    return out;
}

} // namespace detail

inline CliConfig parse_config(std::string_view text) {
    CliConfig config;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(
            pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        ++line_no;
        pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

        std::string_view stripped = detail::trim(line);
        if (stripped.empty() || stripped.front() == '#') continue;
        std::size_t eq = stripped.find('=');
        if (eq == std::string_view::npos)
            throw Error(ErrorCode::ConfigError,
                        "line " + std::to_string(line_no) +
                            ": expected `key = value`");
        std::string key(detail::trim(stripped.substr(0, eq)));
        std::string value(detail::trim(stripped.substr(eq + 1)));

        if (key == "corpus_dir") {
            config.corpus_dir = value;
        } else if (key == "window") {
            config.tracker.window = detail::parse_number<std::size_t>(key, value);
            if (config.tracker.window == 0)
                throw Error(ErrorCode::ConfigError, "window must be positive");
        } else if (key == "min_establish") {
            config.tracker.min_establish =
                detail::parse_number<std::size_t>(key, value);
            if (config.tracker.min_establish == 0)
                throw Error(ErrorCode::ConfigError, "min_establish must be positive");
        } else if (key == "theta_drift" || key == "theta_crisis") {
            double v = detail::parse_number<double>(key, value);
            if (v <= 0.0 || v > 1.0)
                throw Error(ErrorCode::ConfigError,
                            key + " must lie in (0, 1], got " + value);
            (key == "theta_drift" ? config.tracker.theta_drift
                                  : config.tracker.theta_crisis) = v;
        } else if (key == "lexicon_path") {
            config.lexicon_path = value;
        } else {
            throw Error(ErrorCode::ConfigError,
                        "unknown key '" + key + "' on line " +
                            std::to_string(line_no));
        }
    }
    return config;
}

inline CliConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorCode::IoFailure, "cannot read '" + path.string() + "'");
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_config(text);
}

} // namespace kuhn
