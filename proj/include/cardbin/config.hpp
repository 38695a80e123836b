#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cardbin {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Spread statistic used for block classification. The mean absolute
// deviation is the default; variance and integer stddev are selectable for
// fidelity experiments.
enum class VarianceMode { MeanAbsDeviation, PopulationVariance, StdDev };

std::string_view to_string(VarianceMode mode);
std::optional<VarianceMode> variance_mode_from(std::string_view token);

// Every tunable threshold of the pipeline. Size thresholds that scale with
// the input (H/60, W/40, ...) are stored as divisors; the aspect-ratio
// bounds carry one decimal digit of fixed point so comparisons stay in
// integer cross-multiplication.
struct PipelineConfig {
    int t_fixed = 20;        // minimum intensity tolerance
    int t_min = 100;         // background gate: g_min must exceed this
    int h_th_divisor = 60;   // min component height = H / 60
    int w_th_divisor = 40;   // min component width  = W / 40
    int a_th_divisor = 1500; // min component area   = W*H / 1500
    int b_th_divisor = 100;  // max line breadth     = H / 100
    int l_th_divisor = 40;   // min line length      = W / 40
    int r_min_x10 = 12;      // aspect-ratio lower bound, 1.2
    int r_max_x10 = 320;     // aspect-ratio upper bound, 32
    int ra_min = 5;          // fill-ratio lower bound, percent
    int ra_max = 90;         // fill-ratio upper bound, percent
    double epsilon = 0.035;  // max pairwise skew-angle deviation, radians
    int min_shade_extent = 2; // minimum gray-shade run per profile column
    VarianceMode variance_mode = VarianceMode::MeanAbsDeviation;

    void validate() const; // throws ConfigError

    bool operator==(const PipelineConfig&) const = default;
};

// Flat "key = value" lines, '#' comments, unknown keys are errors.
PipelineConfig parse_config(std::istream& in);
PipelineConfig load_config(const std::string& path);
void write_config(const PipelineConfig& config, std::ostream& out);
void save_config(const PipelineConfig& config, const std::string& path);

} // namespace cardbin
