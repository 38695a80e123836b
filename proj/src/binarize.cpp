#include "cardbin/binarize.hpp"

#include <algorithm>

#include "cardbin/kernels.hpp"

namespace cardbin {

BinaryImage midpoint_threshold(const GrayImage& patch, std::uint8_t g_min,
                               std::uint8_t g_max) {
    const auto& k = kernels::active();
    const std::uint8_t mid = std::uint8_t((int(g_min) + int(g_max)) / 2);
    BinaryImage mask(patch.width, patch.height);
    k.mask_lt(patch.data.data(), mask.data.data(), patch.data.size(), mid);
    return mask;
}

BinaryImage binarize_region(const GrayImage& patch, std::uint8_t g_min, std::uint8_t g_max,
                            MemoryLedger* ledger) {
    ScopedBytes mask_bytes(ledger, patch.bytes());
    BinaryImage mask = midpoint_threshold(patch, g_min, g_max);

    // The result buffer is on the ledger only while promotion runs; the
    // caller re-registers it for however long it keeps the patch.
    ScopedBytes out_bytes(ledger, patch.bytes());
    const auto& k = kernels::active();
    BinaryImage out(patch.width, patch.height);
    for (int y = 0; y < patch.height; ++y) {
        if (y == 0 || y == patch.height - 1) {
            // Border rows have no 8-neighborhood; phase 1 stands.
            std::copy_n(mask.row(y), mask.width, out.row(y));
        } else {
            k.promote_row(mask.row(y - 1), mask.row(y), mask.row(y + 1), out.row(y),
                          std::size_t(mask.width));
        }
    }
    out_bytes.release();
    return out;
}

void paste_or(const BinaryImage& patch, BinaryImage& dst, int ox, int oy) {
    for (int y = 0; y < patch.height; ++y) {
        const std::uint8_t* src = patch.row(y);
        std::uint8_t* out = dst.row(oy + y) + ox;
        for (int x = 0; x < patch.width; ++x) out[x] |= src[x];
    }
}

BinaryImage binarize_card(const std::vector<RegionPatch>& regions, int width, int height) {
    BinaryImage out(width, height, 0);
    for (const RegionPatch& region : regions)
        paste_or(region.bits, out, region.bbox.x, region.bbox.y);
    return out;
}

} // namespace cardbin
