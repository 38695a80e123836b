#include "cardbin/background.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "cardbin/kernels.hpp"

namespace cardbin {
namespace {

int isqrt(long long v) {
    if (v <= 0) return 0;
    long long r = static_cast<long long>(std::sqrt(double(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return int(r);
}

} // namespace

std::vector<Block> split_blocks(int width, int height) {
    const int bw = std::max(1, width / 64);
    const int bh = 2;
    std::vector<Block> blocks;
    blocks.reserve(std::size_t((width + bw - 1) / bw) * std::size_t((height + bh - 1) / bh));
    for (int y = 0; y < height; y += bh)
        for (int x = 0; x < width; x += bw)
            blocks.push_back({x, y, std::min(bw, width - x), std::min(bh, height - y)});
    return blocks;
}

BlockStats block_stats(const GrayImage& image, const Block& block,
                       const PipelineConfig& config) {
    const auto& k = kernels::active();
    kernels::MinMaxU8 mm{255, 0};
    std::uint64_t sum = 0;
    for (int y = block.y; y < block.y + block.h; ++y) {
        const std::uint8_t* row = image.row(y) + block.x;
        auto r = k.min_max(row, std::size_t(block.w));
        mm.min = std::min(mm.min, r.min);
        mm.max = std::max(mm.max, r.max);
        sum += k.sum(row, std::size_t(block.w));
    }
    const std::uint64_t n = std::uint64_t(block.w) * block.h;
    const std::uint8_t mu = std::uint8_t(sum / n);

    std::uint64_t dev = 0;
    const bool absolute = config.variance_mode == VarianceMode::MeanAbsDeviation;
    for (int y = block.y; y < block.y + block.h; ++y) {
        const std::uint8_t* row = image.row(y) + block.x;
        dev += absolute ? k.abs_dev_sum(row, std::size_t(block.w), mu)
                        : k.sq_dev_sum(row, std::size_t(block.w), mu);
    }

    int spread = int(dev / n);
    if (config.variance_mode == VarianceMode::StdDev) spread = isqrt(spread);
    return {mm.min, mm.max, spread};
}

int dynamic_threshold(int g_min, const PipelineConfig& config) {
    const int over = g_min - config.t_min;
    const int t_var = (over - std::min(config.t_fixed, over)) * 2;
    return config.t_fixed + t_var;
}

BlockClass classify_block(const BlockStats& stats, const PipelineConfig& config) {
    if (stats.g_min > config.t_min && stats.spread < dynamic_threshold(stats.g_min, config))
        return BlockClass::Background;
    return BlockClass::Information;
}

GrayImage eliminate_background(const GrayImage& image, const PipelineConfig& config) {
    GrayImage out = image;
    for (const Block& block : split_blocks(image.width, image.height)) {
        if (classify_block(block_stats(image, block, config), config) == BlockClass::Background)
            for (int y = block.y; y < block.y + block.h; ++y)
                std::memset(out.row(y) + block.x, 255, std::size_t(block.w));
    }
    return out;
}

} // namespace cardbin
