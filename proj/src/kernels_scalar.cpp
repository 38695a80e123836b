#include "cardbin/kernels.hpp"

namespace cardbin::kernels {
namespace {

MinMaxU8 min_max_scalar(const std::uint8_t* src, std::size_t n) {
    MinMaxU8 r{255, 0};
    for (std::size_t i = 0; i < n; ++i) {
        if (src[i] < r.min) r.min = src[i];
        if (src[i] > r.max) r.max = src[i];
    }
    return r;
}

std::uint64_t sum_scalar(const std::uint8_t* src, std::size_t n) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += src[i];
    return s;
}

std::uint64_t abs_dev_sum_scalar(const std::uint8_t* src, std::size_t n, std::uint8_t center) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        int d = int(src[i]) - int(center);
        s += std::uint64_t(d < 0 ? -d : d);
    }
    return s;
}

std::uint64_t sq_dev_sum_scalar(const std::uint8_t* src, std::size_t n, std::uint8_t center) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
        long long d = int(src[i]) - int(center);
        s += std::uint64_t(d * d);
    }
    return s;
}

std::size_t count_lt_scalar(const std::uint8_t* src, std::size_t n, std::uint8_t threshold) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (src[i] < threshold) ++c;
    return c;
}

void mask_lt_scalar(const std::uint8_t* src, std::uint8_t* dst, std::size_t n,
                    std::uint8_t threshold) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = src[i] < threshold ? 1 : 0;
}

void promote_row_scalar(const std::uint8_t* above, const std::uint8_t* row,
                        const std::uint8_t* below, std::uint8_t* dst, std::size_t n) {
    if (n == 0) return;
    dst[0] = row[0];
    if (n == 1) return;
    dst[n - 1] = row[n - 1];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (row[i]) {
            dst[i] = 1;
            continue;
        }
        int neighbors = above[i - 1] + above[i] + above[i + 1] + row[i - 1] + row[i + 1] +
                        below[i - 1] + below[i] + below[i + 1];
        dst[i] = neighbors > 4 ? 1 : 0;
    }
}

void luma_row_scalar(const std::uint8_t* rgb, std::uint8_t* dst, std::size_t npix) {
    for (std::size_t i = 0; i < npix; ++i) {
        const std::uint8_t* p = rgb + 3 * i;
        dst[i] = std::uint8_t((299 * p[0] + 587 * p[1] + 114 * p[2]) / 1000);
    }
}

const Table kScalarTable = {
    "scalar",        min_max_scalar,  sum_scalar,        abs_dev_sum_scalar,
    sq_dev_sum_scalar, count_lt_scalar, mask_lt_scalar,  promote_row_scalar,
    luma_row_scalar,
};

} // namespace

const Table& scalar() { return kScalarTable; }

} // namespace cardbin::kernels
