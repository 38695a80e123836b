#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cardbin/binarize.hpp"
#include "cardbin/config.hpp"
#include "cardbin/image.hpp"
#include "cardbin/regions.hpp"
#include "cardbin/skew.hpp"

namespace cardbin {

struct StageReport {
    std::string stage;
    double ms = 0.0;            // wall time, monotonic clock
    std::size_t peak_bytes = 0; // peak tracked auxiliary bytes during the stage
};

struct RegionResult {
    ConnectedComponent cc;
    RegionClass cls = RegionClass::NonText;
    std::optional<SkewEstimate> skew; // present for text regions
};

struct CardResult {
    BinaryImage binary;                // same dimensions as the input
    std::vector<RegionResult> regions; // every component with its class
    std::vector<StageReport> reports;  // background, regions, skew, binarize
};

// background elimination -> non-text removal -> per-region skew correction
// -> binarization. Deterministic for fixed (image, config); degenerate
// inputs yield an all-0 binary image and an empty region list.
CardResult process_card(const GrayImage& image, const PipelineConfig& config);

// Peak auxiliary bytes across all stages.
std::size_t peak_auxiliary_bytes(const CardResult& result);

} // namespace cardbin
