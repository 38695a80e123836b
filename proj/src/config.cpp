#include "cardbin/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>

namespace cardbin {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

[[noreturn]] void fail(int line, const std::string& message) {
    throw ConfigError("config line " + std::to_string(line) + ": " + message);
}

int parse_int(std::string_view value, int line) {
    std::string s(value);
    char* end = nullptr;
    long v = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0') fail(line, "expected integer, got '" + s + "'");
    if (v < -(1L << 30) || v > (1L << 30)) fail(line, "integer out of range");
    return int(v);
}

double parse_double(std::string_view value, int line) {
    std::string s(value);
    char* end = nullptr;
    double v = std::strtod(s.c_str(), &end);
    if (end == s.c_str() || *end != '\0') fail(line, "expected number, got '" + s + "'");
    return v;
}

} // namespace

std::string_view to_string(VarianceMode mode) {
    switch (mode) {
        case VarianceMode::MeanAbsDeviation: return "mean-abs-deviation";
        case VarianceMode::PopulationVariance: return "population-variance";
        case VarianceMode::StdDev: return "stddev";
    }
    return "mean-abs-deviation";
}

std::optional<VarianceMode> variance_mode_from(std::string_view token) {
    if (token == "mean-abs-deviation") return VarianceMode::MeanAbsDeviation;
    if (token == "population-variance") return VarianceMode::PopulationVariance;
    if (token == "stddev") return VarianceMode::StdDev;
    return std::nullopt;
}

void PipelineConfig::validate() const {
    auto require = [](bool ok, const char* message) {
        if (!ok) throw ConfigError(message);
    };
    require(t_fixed >= 0, "t_fixed must be nonnegative");
    require(t_min >= 0, "t_min must be nonnegative");
    require(h_th_divisor >= 1, "h_th_divisor must be positive");
    require(w_th_divisor >= 1, "w_th_divisor must be positive");
    require(a_th_divisor >= 1, "a_th_divisor must be positive");
    require(b_th_divisor >= 1, "b_th_divisor must be positive");
    require(l_th_divisor >= 1, "l_th_divisor must be positive");
    require(r_min_x10 >= 0 && r_max_x10 >= 0, "aspect bounds must be nonnegative");
    require(r_min_x10 < r_max_x10, "r_min must be below r_max");
    require(ra_min >= 0 && ra_max <= 100, "fill-ratio bounds must lie in [0,100]");
    require(ra_min < ra_max, "ra_min must be below ra_max");
    require(epsilon >= 0.0, "epsilon must be nonnegative");
    require(min_shade_extent >= 1, "min_shade_extent must be positive");
}

PipelineConfig parse_config(std::istream& in) {
    PipelineConfig config;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string_view s = trim(raw);
        if (s.empty() || s.front() == '#') continue;
        auto eq = s.find('=');
        if (eq == std::string_view::npos) fail(line, "expected 'key = value'");
        std::string_view key = trim(s.substr(0, eq));
        std::string_view value = trim(s.substr(eq + 1));
        if (key.empty()) fail(line, "missing key");
        if (value.empty()) fail(line, "missing value");

        if (key == "t_fixed") config.t_fixed = parse_int(value, line);
        else if (key == "t_min") config.t_min = parse_int(value, line);
        else if (key == "h_th_divisor") config.h_th_divisor = parse_int(value, line);
        else if (key == "w_th_divisor") config.w_th_divisor = parse_int(value, line);
        else if (key == "a_th_divisor") config.a_th_divisor = parse_int(value, line);
        else if (key == "b_th_divisor") config.b_th_divisor = parse_int(value, line);
        else if (key == "l_th_divisor") config.l_th_divisor = parse_int(value, line);
        else if (key == "r_min_x10") config.r_min_x10 = parse_int(value, line);
        else if (key == "r_max_x10") config.r_max_x10 = parse_int(value, line);
        else if (key == "ra_min") config.ra_min = parse_int(value, line);
        else if (key == "ra_max") config.ra_max = parse_int(value, line);
        else if (key == "epsilon") config.epsilon = parse_double(value, line);
        else if (key == "min_shade_extent") config.min_shade_extent = parse_int(value, line);
        else if (key == "variance_mode") {
            auto mode = variance_mode_from(value);
            if (!mode) fail(line, "unknown variance_mode '" + std::string(value) + "'");
            config.variance_mode = *mode;
        } else {
            fail(line, "unknown key '" + std::string(key) + "'");
        }
    }
    config.validate();
    return config;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config " + path);
    return parse_config(in);
}

void write_config(const PipelineConfig& config, std::ostream& out) {
    char eps[64];
    std::snprintf(eps, sizeof eps, "%.17g", config.epsilon);
    out << "t_fixed = " << config.t_fixed << "\n"
        << "t_min = " << config.t_min << "\n"
        << "h_th_divisor = " << config.h_th_divisor << "\n"
        << "w_th_divisor = " << config.w_th_divisor << "\n"
        << "a_th_divisor = " << config.a_th_divisor << "\n"
        << "b_th_divisor = " << config.b_th_divisor << "\n"
        << "l_th_divisor = " << config.l_th_divisor << "\n"
        << "r_min_x10 = " << config.r_min_x10 << "\n"
        << "r_max_x10 = " << config.r_max_x10 << "\n"
        << "ra_min = " << config.ra_min << "\n"
        << "ra_max = " << config.ra_max << "\n"
        << "epsilon = " << eps << "\n"
        << "min_shade_extent = " << config.min_shade_extent << "\n"
        << "variance_mode = " << to_string(config.variance_mode) << "\n";
}

void save_config(const PipelineConfig& config, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open " + path + " for writing");
    write_config(config, out);
}

} // namespace cardbin
