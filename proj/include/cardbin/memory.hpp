#pragma once

#include <algorithm>
#include <cstddef>

namespace cardbin {

// Byte counter for the pipeline's working buffers. Tracks the overall peak
// plus a resettable per-stage watermark so stage reports can attribute
// allocations without a custom allocator.
class MemoryLedger {
public:
    void add(std::size_t n) {
        current_ += n;
        peak_ = std::max(peak_, current_);
        window_peak_ = std::max(window_peak_, current_);
    }
    void sub(std::size_t n) { current_ -= std::min(n, current_); }

    std::size_t current() const { return current_; }
    std::size_t peak() const { return peak_; }

    void begin_window() { window_peak_ = current_; }
    std::size_t window_peak() const { return window_peak_; }

private:
    std::size_t current_ = 0;
    std::size_t peak_ = 0;
    std::size_t window_peak_ = 0;
};

// RAII registration of one buffer's size with an optional ledger.
class ScopedBytes {
public:
    ScopedBytes() = default;
    ScopedBytes(MemoryLedger* ledger, std::size_t n) : ledger_(ledger), n_(n) {
        if (ledger_) ledger_->add(n_);
    }
    ScopedBytes(ScopedBytes&& other) noexcept : ledger_(other.ledger_), n_(other.n_) {
        other.ledger_ = nullptr;
        other.n_ = 0;
    }
    ScopedBytes& operator=(ScopedBytes&& other) noexcept {
        if (this != &other) {
            release();
            ledger_ = other.ledger_;
            n_ = other.n_;
            other.ledger_ = nullptr;
            other.n_ = 0;
        }
        return *this;
    }
    ScopedBytes(const ScopedBytes&) = delete;
    ScopedBytes& operator=(const ScopedBytes&) = delete;
    ~ScopedBytes() { release(); }

    void release() {
        if (ledger_) ledger_->sub(n_);
        ledger_ = nullptr;
        n_ = 0;
    }

private:
    MemoryLedger* ledger_ = nullptr;
    std::size_t n_ = 0;
};

} // namespace cardbin
