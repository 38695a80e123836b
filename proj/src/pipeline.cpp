#include "cardbin/pipeline.hpp"

#include <algorithm>
#include <chrono>

#include "cardbin/background.hpp"
#include "cardbin/memory.hpp"

namespace cardbin {
namespace {

using Clock = std::chrono::steady_clock;

// Accumulates wall time and ledger watermarks over possibly interleaved
// windows (skew and binarize alternate per region).
struct StageMeter {
    const char* name;
    MemoryLedger& ledger;
    double ms = 0.0;
    std::size_t peak = 0;
    Clock::time_point started{};

    void begin() {
        ledger.begin_window();
        started = Clock::now();
    }
    void end() {
        ms += std::chrono::duration<double, std::milli>(Clock::now() - started).count();
        peak = std::max(peak, ledger.window_peak());
    }
    StageReport report() const { return {name, ms, peak}; }
};

std::size_t span_storage_bytes(const std::vector<ConnectedComponent>& components) {
    std::size_t bytes = 0;
    for (const auto& cc : components) bytes += cc.spans.capacity() * sizeof(PixelSpan);
    return bytes;
}

} // namespace

CardResult process_card(const GrayImage& image, const PipelineConfig& config) {
    MemoryLedger ledger;
    StageMeter background{"background", ledger};
    StageMeter regions{"regions", ledger};
    StageMeter skew{"skew", ledger};
    StageMeter binarize{"binarize", ledger};

    CardResult result;

    background.begin();
    GrayImage working = eliminate_background(image, config);
    ScopedBytes working_bytes(&ledger, working.bytes());
    background.end();

    regions.begin();
    std::vector<ConnectedComponent> components = extract_components(working, &ledger);
    ScopedBytes component_bytes(&ledger, span_storage_bytes(components));
    const RegionThresholds thresholds = RegionThresholds::from(image.width, image.height, config);
    std::vector<RegionClass> classes;
    classes.reserve(components.size());
    for (const auto& cc : components)
        classes.push_back(classify_component(cc, thresholds, config));

    // Keep a summary of every component for the caller before the text
    // survivors are moved out.
    std::vector<std::size_t> text_slots;
    result.regions.reserve(components.size());
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (classes[i] == RegionClass::Text) text_slots.push_back(result.regions.size());
        result.regions.push_back({std::move(components[i]), classes[i], std::nullopt});
    }
    for (std::size_t i = 0; i < result.regions.size(); ++i) {
        if (result.regions[i].cls != RegionClass::Text)
            for (const PixelSpan& s : result.regions[i].cc.spans)
                std::fill_n(working.row(s.y) + s.x0, s.x1 - s.x0, std::uint8_t(255));
    }
    regions.end();

    result.binary = BinaryImage(image.width, image.height, 0);
    ScopedBytes output_bytes(&ledger, result.binary.bytes());

    for (std::size_t slot : text_slots) {
        RegionResult& region = result.regions[slot];

        skew.begin();
        SkewEstimate estimate = estimate_skew(region.cc.bbox, working, config);
        region.skew = estimate;
        GrayImage patch = rotate_region(working, region.cc.bbox, estimate.angle, &ledger);
        ScopedBytes patch_bytes(&ledger, patch.bytes());
        skew.end();

        binarize.begin();
        BinaryImage bits = binarize_region(patch, region.cc.g_min, region.cc.g_max, &ledger);
        ScopedBytes bits_bytes(&ledger, bits.bytes());
        paste_or(bits, result.binary, region.cc.bbox.x, region.cc.bbox.y);
        binarize.end();
    }

    result.reports = {background.report(), regions.report(), skew.report(), binarize.report()};
    return result;
}

std::size_t peak_auxiliary_bytes(const CardResult& result) {
    std::size_t peak = 0;
    for (const StageReport& report : result.reports) peak = std::max(peak, report.peak_bytes);
    return peak;
}

} // namespace cardbin
