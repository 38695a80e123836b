#pragma once

#include <cstdint>
#include <vector>

#include "cardbin/image.hpp"
#include "cardbin/memory.hpp"

namespace cardbin {

// Phase 1: foreground iff intensity < (g_min + g_max) / 2, integer division.
BinaryImage midpoint_threshold(const GrayImage& patch, std::uint8_t g_min,
                               std::uint8_t g_max);

// Phase 1 plus 8-neighbor promotion: a non-border pixel left background by
// the midpoint test becomes foreground when more than 4 of its 8 neighbors
// are phase-1 foreground. Promotion reads the phase-1 mask only, so the
// result is independent of pixel visit order. The ledger, when given,
// tracks the transient phase-1 mask.
BinaryImage binarize_region(const GrayImage& patch, std::uint8_t g_min, std::uint8_t g_max,
                            MemoryLedger* ledger = nullptr);

struct RegionPatch {
    Box bbox;
    BinaryImage bits;
};

// Full-size composition: all-0 background, each patch pasted at its bbox,
// overlapping cells take the OR of contributions.
BinaryImage binarize_card(const std::vector<RegionPatch>& regions, int width, int height);

// OR-paste helper shared by binarize_card and the pipeline.
void paste_or(const BinaryImage& patch, BinaryImage& dst, int ox, int oy);

} // namespace cardbin
