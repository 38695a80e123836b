#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

// Data-parallel inner loops of the pipeline. Every kernel has a scalar
// reference implementation and, on x86-64, an AVX2 variant selected at
// runtime. Variants must be bit-identical to the scalar reference; the test
// suite enforces equivalence on random and exhaustive inputs.

namespace cardbin::kernels {

struct MinMaxU8 {
    std::uint8_t min;
    std::uint8_t max;
};

struct Table {
    const char* name;

    // Extrema over n bytes; n == 0 yields the combining identity {255, 0}.
    MinMaxU8 (*min_max)(const std::uint8_t* src, std::size_t n);

    std::uint64_t (*sum)(const std::uint8_t* src, std::size_t n);

    // Sum of |src[i] - center|.
    std::uint64_t (*abs_dev_sum)(const std::uint8_t* src, std::size_t n, std::uint8_t center);

    // Sum of (src[i] - center)^2.
    std::uint64_t (*sq_dev_sum)(const std::uint8_t* src, std::size_t n, std::uint8_t center);

    std::size_t (*count_lt)(const std::uint8_t* src, std::size_t n, std::uint8_t threshold);

    // dst[i] = src[i] < threshold ? 1 : 0.
    void (*mask_lt)(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                    std::uint8_t threshold);

    // 8-neighbor promotion over 0/1 mask rows: dst[i] = row[i] for border
    // columns; interior columns additionally promote when at least 5 of the
    // 8 neighbors are set. above/row/below are rows of the same mask.
    void (*promote_row)(const std::uint8_t* above, const std::uint8_t* row,
                        const std::uint8_t* below, std::uint8_t* dst, std::size_t n);

    // Interleaved RGB to gray, dst[i] = (299 r + 587 g + 114 b) / 1000.
    void (*luma_row)(const std::uint8_t* rgb, std::uint8_t* dst, std::size_t npix);
};

const Table& scalar();

// True when the AVX2 table is usable on this host.
bool avx2_available();
const Table& avx2();

// AVX2 when available, unless overridden via env CARDBIN_KERNELS=scalar|avx2.
const Table& active();

// Lookup by name for tests and the env override; nullptr when unknown or
// unavailable on this host.
const Table* find(std::string_view name);

} // namespace cardbin::kernels
