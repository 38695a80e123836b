#pragma once

#include <cstdint>
#include <vector>

#include "cardbin/config.hpp"
#include "cardbin/image.hpp"

namespace cardbin {

// Fixed-size classification tile, nominally (W/64) x 2 px; edge blocks are
// clipped to the image, never skipped.
struct Block {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;
    bool operator==(const Block&) const = default;
};

struct BlockStats {
    std::uint8_t g_min = 0;
    std::uint8_t g_max = 0;
    int spread = 0; // intensity variation per PipelineConfig::variance_mode
};

enum class BlockClass { Background, Information };

// Tiles width x height exactly: disjoint cover, nominal block w = max(1, W/64),
// h = 2, rightmost/bottom blocks clipped.
std::vector<Block> split_blocks(int width, int height);

BlockStats block_stats(const GrayImage& image, const Block& block,
                       const PipelineConfig& config);

// T_sigma = t_fixed + ((g_min - t_min) - min(t_fixed, g_min - t_min)) * 2,
// evaluated in signed integers; collapses to t_fixed when g_min - t_min <= t_fixed.
int dynamic_threshold(int g_min, const PipelineConfig& config);

// Background iff g_min > t_min and spread < dynamic_threshold(g_min).
BlockClass classify_block(const BlockStats& stats, const PipelineConfig& config);

// Copy of the image with every background block set to 255. Idempotent.
GrayImage eliminate_background(const GrayImage& image, const PipelineConfig& config);

} // namespace cardbin
