#if defined(__x86_64__) || defined(__i386__)
#ifdef __AVX2__

#include "cardbin/kernels.hpp"

#include <immintrin.h>

namespace cardbin::kernels {
namespace {

std::uint64_t hsum_epi64(__m256i v) {
    alignas(32) std::uint64_t lanes[4];
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), v);
    return lanes[0] + lanes[1] + lanes[2] + lanes[3];
}

MinMaxU8 min_max_avx2(const std::uint8_t* src, std::size_t n) {
    MinMaxU8 r{255, 0};
    std::size_t i = 0;
    if (n >= 32) {
        __m256i vmin = _mm256_set1_epi8(char(0xFF));
        __m256i vmax = _mm256_setzero_si256();
        for (; i + 32 <= n; i += 32) {
            __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
            vmin = _mm256_min_epu8(vmin, v);
            vmax = _mm256_max_epu8(vmax, v);
        }
        alignas(32) std::uint8_t mn[32], mx[32];
        _mm256_store_si256(reinterpret_cast<__m256i*>(mn), vmin);
        _mm256_store_si256(reinterpret_cast<__m256i*>(mx), vmax);
        for (int k = 0; k < 32; ++k) {
            if (mn[k] < r.min) r.min = mn[k];
            if (mx[k] > r.max) r.max = mx[k];
        }
    }
    for (; i < n; ++i) {
        if (src[i] < r.min) r.min = src[i];
        if (src[i] > r.max) r.max = src[i];
    }
    return r;
}

std::uint64_t sum_avx2(const std::uint8_t* src, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(v, zero));
    }
    std::uint64_t s = hsum_epi64(acc);
    for (; i < n; ++i) s += src[i];
    return s;
}

std::uint64_t abs_dev_sum_avx2(const std::uint8_t* src, std::size_t n, std::uint8_t center) {
    __m256i acc = _mm256_setzero_si256();
    const __m256i c = _mm256_set1_epi8(char(center));
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        acc = _mm256_add_epi64(acc, _mm256_sad_epu8(v, c));
    }
    std::uint64_t s = hsum_epi64(acc);
    for (; i < n; ++i) {
        int d = int(src[i]) - int(center);
        s += std::uint64_t(d < 0 ? -d : d);
    }
    return s;
}

std::uint64_t sq_dev_sum_avx2(const std::uint8_t* src, std::size_t n, std::uint8_t center) {
    const __m256i zero = _mm256_setzero_si256();
    const __m256i c16 = _mm256_set1_epi16(short(center));
    std::uint64_t total = 0;
    std::size_t i = 0;
    while (i + 32 <= n) {
        // Each madd lane stays under 2^18 per step; 4096 steps keep the
        // 32-bit accumulator far from overflow.
        std::size_t steps = (n - i) / 32;
        if (steps > 4096) steps = 4096;
        __m256i acc = _mm256_setzero_si256();
        for (std::size_t k = 0; k < steps; ++k, i += 32) {
            __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
            __m256i lo = _mm256_sub_epi16(_mm256_unpacklo_epi8(v, zero), c16);
            __m256i hi = _mm256_sub_epi16(_mm256_unpackhi_epi8(v, zero), c16);
            acc = _mm256_add_epi32(acc, _mm256_madd_epi16(lo, lo));
            acc = _mm256_add_epi32(acc, _mm256_madd_epi16(hi, hi));
        }
        alignas(32) std::uint32_t lanes[8];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
        for (int k = 0; k < 8; ++k) total += lanes[k];
    }
    for (; i < n; ++i) {
        long long d = int(src[i]) - int(center);
        total += std::uint64_t(d * d);
    }
    return total;
}

std::size_t count_lt_avx2(const std::uint8_t* src, std::size_t n, std::uint8_t threshold) {
    if (threshold == 0) return 0;
    // v < t for unsigned bytes via min(v, t-1) == v.
    const __m256i tm1 = _mm256_set1_epi8(char(threshold - 1));
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
        __m256i lt = _mm256_cmpeq_epi8(_mm256_min_epu8(v, tm1), v);
        c += std::size_t(_mm_popcnt_u32(std::uint32_t(_mm256_movemask_epi8(lt))));
    }
    for (; i < n; ++i)
        if (src[i] < threshold) ++c;
    return c;
}

void mask_lt_avx2(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                  std::uint8_t threshold) {
    std::size_t i = 0;
    if (threshold > 0) {
        const __m256i tm1 = _mm256_set1_epi8(char(threshold - 1));
        const __m256i one = _mm256_set1_epi8(1);
        for (; i + 32 <= n; i += 32) {
            __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i));
            __m256i lt = _mm256_cmpeq_epi8(_mm256_min_epu8(v, tm1), v);
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_and_si256(lt, one));
        }
    }
    for (; i < n; ++i) dst[i] = src[i] < threshold ? 1 : 0;
}

void promote_row_avx2(const std::uint8_t* above, const std::uint8_t* row,
                      const std::uint8_t* below, std::uint8_t* dst, std::size_t n) {
    if (n == 0) return;
    dst[0] = row[0];
    if (n == 1) return;
    dst[n - 1] = row[n - 1];
    std::size_t i = 1;
    if (n >= 34) {
        const __m256i four = _mm256_set1_epi8(4);
        const __m256i one = _mm256_set1_epi8(1);
        const __m256i zero = _mm256_setzero_si256();
        for (; i + 33 <= n; i += 32) {
            __m256i sum = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(above + i - 1));
            sum = _mm256_add_epi8(sum, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(above + i)));
            sum = _mm256_add_epi8(sum, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(above + i + 1)));
            sum = _mm256_add_epi8(sum, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i - 1)));
            sum = _mm256_add_epi8(sum, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i + 1)));
            sum = _mm256_add_epi8(sum, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(below + i - 1)));
            sum = _mm256_add_epi8(sum, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(below + i)));
            sum = _mm256_add_epi8(sum, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(below + i + 1)));
            __m256i rv = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + i));
            __m256i promoted = _mm256_and_si256(_mm256_cmpgt_epi8(sum, four),
                                                _mm256_cmpeq_epi8(rv, zero));
            __m256i out = _mm256_or_si256(rv, _mm256_and_si256(promoted, one));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), out);
        }
    }
    for (; i + 1 < n; ++i) {
        if (row[i]) {
            dst[i] = 1;
            continue;
        }
        int neighbors = above[i - 1] + above[i] + above[i + 1] + row[i - 1] + row[i + 1] +
                        below[i - 1] + below[i] + below[i + 1];
        dst[i] = neighbors > 4 ? 1 : 0;
    }
}

void luma_row_avx2(const std::uint8_t* rgb, std::uint8_t* dst, std::size_t npix) {
    // Byte positions of the r/g/b samples of 8 interleaved pixels split
    // across two 16-byte loads (second load starts at byte 16).
    const __m128i r_lo = _mm_setr_epi8(0, 3, 6, 9, 12, 15, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1);
    const __m128i r_hi = _mm_setr_epi8(-1, -1, -1, -1, -1, -1, 2, 5, -1, -1, -1, -1, -1, -1, -1, -1);
    const __m128i g_lo = _mm_setr_epi8(1, 4, 7, 10, 13, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1);
    const __m128i g_hi = _mm_setr_epi8(-1, -1, -1, -1, -1, 0, 3, 6, -1, -1, -1, -1, -1, -1, -1, -1);
    const __m128i b_lo = _mm_setr_epi8(2, 5, 8, 11, 14, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1, -1);
    const __m128i b_hi = _mm_setr_epi8(-1, -1, -1, -1, -1, 1, 4, 7, -1, -1, -1, -1, -1, -1, -1, -1);
    const __m256i wr = _mm256_set1_epi32(299);
    const __m256i wg = _mm256_set1_epi32(587);
    const __m256i wb = _mm256_set1_epi32(114);
    const __m256 thousand = _mm256_set1_ps(1000.0f);

    std::size_t p = 0;
    // Pixels p..p+7 occupy bytes [3p, 3p+24); the two loads touch [3p, 3p+32).
    while (p + 8 <= npix && 3 * p + 32 <= 3 * npix) {
        __m128i lo = _mm_loadu_si128(reinterpret_cast<const __m128i*>(rgb + 3 * p));
        __m128i hi = _mm_loadu_si128(reinterpret_cast<const __m128i*>(rgb + 3 * p + 16));
        __m128i r8 = _mm_or_si128(_mm_shuffle_epi8(lo, r_lo), _mm_shuffle_epi8(hi, r_hi));
        __m128i g8 = _mm_or_si128(_mm_shuffle_epi8(lo, g_lo), _mm_shuffle_epi8(hi, g_hi));
        __m128i b8 = _mm_or_si128(_mm_shuffle_epi8(lo, b_lo), _mm_shuffle_epi8(hi, b_hi));
        __m256i t = _mm256_mullo_epi32(_mm256_cvtepu8_epi32(r8), wr);
        t = _mm256_add_epi32(t, _mm256_mullo_epi32(_mm256_cvtepu8_epi32(g8), wg));
        t = _mm256_add_epi32(t, _mm256_mullo_epi32(_mm256_cvtepu8_epi32(b8), wb));
        // t <= 255000 < 2^24, so the float divide truncates identically to
        // the integer division (quotient gaps are >= 1/1000, far above ulp).
        __m256i q = _mm256_cvttps_epi32(_mm256_div_ps(_mm256_cvtepi32_ps(t), thousand));
        alignas(32) std::int32_t lanes[8];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), q);
        for (int k = 0; k < 8; ++k) dst[p + k] = std::uint8_t(lanes[k]);
        p += 8;
    }
    for (; p < npix; ++p) {
        const std::uint8_t* px = rgb + 3 * p;
        dst[p] = std::uint8_t((299 * px[0] + 587 * px[1] + 114 * px[2]) / 1000);
    }
}

const Table kAvx2Table = {
    "avx2",          min_max_avx2,  sum_avx2,      abs_dev_sum_avx2,
    sq_dev_sum_avx2, count_lt_avx2, mask_lt_avx2,  promote_row_avx2,
    luma_row_avx2,
};

} // namespace

const Table& avx2() { return kAvx2Table; }

} // namespace cardbin::kernels

#endif // __AVX2__
#endif // x86
