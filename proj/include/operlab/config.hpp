#pragma once

// Run configuration: defaults, then a key = value file, then OPERLAB_BUDGET,
// then command-line flags.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <string>
#include <thread>

#include "operlab/error.hpp"

namespace operlab {

struct RunConfig {
    std::uint64_t budget = 100000000;
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    std::uint64_t seed = 42;
    std::string output_format = "json";
    bool quiet = false;

    void validate() const {
        if (budget < 1) throw Error(Errc::InvalidArgument, "budget must be at least 1");
        if (workers < 1) throw Error(Errc::InvalidArgument, "workers must be at least 1");
        if (output_format != "json" && output_format != "csv")
            throw Error(Errc::InvalidArgument, "output_format must be json or csv");
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const auto x = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw Error(Errc::Parse, key + ": expected a nonnegative integer, got '" + v + "'");
    }
}

}  // namespace detail

inline void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "budget") cfg.budget = detail::parse_u64(key, value);
    else if (key == "workers") cfg.workers = static_cast<unsigned>(detail::parse_u64(key, value));
    else if (key == "seed") cfg.seed = detail::parse_u64(key, value);
    else if (key == "output_format") cfg.output_format = value;
    else if (key == "quiet") cfg.quiet = value == "1" || value == "true" || value == "yes";
    else throw Error(Errc::Parse, "unknown config key '" + key + "'");
}

inline void load_config_file(RunConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::InvalidArgument, "cannot open config file " + path);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw Error(Errc::Parse, path + ":" + std::to_string(lineno) + ": expected key = value");
        apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
    }
}

inline void apply_environment(RunConfig& cfg) {
    if (const char* b = std::getenv("OPERLAB_BUDGET"); b && *b) cfg.budget = detail::parse_u64("OPERLAB_BUDGET", b);
}

}  // namespace operlab
