#pragma once

#include <cstdint>
#include <vector>

#include "cardbin/config.hpp"
#include "cardbin/image.hpp"
#include "cardbin/memory.hpp"

namespace cardbin {

// Horizontal run of member pixels, [x0, x1) on row y.
struct PixelSpan {
    int y = 0;
    int x0 = 0;
    int x1 = 0;
    bool operator==(const PixelSpan&) const = default;
};

// Maximal 8-connected set of sub-255 pixels.
struct ConnectedComponent {
    int label = 0;
    Box bbox;
    long long area = 0;               // member pixel count
    std::vector<PixelSpan> spans;     // row-major, sorted by (y, x0)
    std::uint8_t g_min = 255;
    std::uint8_t g_max = 0;
    int fill_ratio_pct = 0;           // percent of members below the midpoint
};

enum class RegionClass { Text, Noise, HorizontalLine, VerticalLine, NonText };

const char* to_string(RegionClass cls);

// Size thresholds instantiated from the image dimensions.
struct RegionThresholds {
    int h_th = 0;       // minimum component height
    int w_th = 0;       // minimum component width
    long long a_th = 0; // minimum component area
    int b_th = 0;       // maximum line breadth
    int l_th = 0;       // minimum line length

    static RegionThresholds from(int image_w, int image_h, const PipelineConfig& config);
};

// Components of intensity < 255, labeled in row-major order of their first
// pixel. bbox/area/extrema/fill ratio are populated. The ledger, when given,
// tracks the transient visited mask and scan stack.
std::vector<ConnectedComponent> extract_components(const GrayImage& image,
                                                   MemoryLedger* ledger = nullptr);

// Percent of member pixels darker than (g_min + g_max) / 2, truncated.
int component_fill_ratio(const ConnectedComponent& cc, const GrayImage& image);

// Line rules run ahead of the noise rule: a thin long component is a line
// even though its breadth is below the minimum character height.
RegionClass classify_component(const ConnectedComponent& cc, const RegionThresholds& th,
                               const PipelineConfig& config);
RegionClass classify_component(const ConnectedComponent& cc, int image_w, int image_h,
                               const PipelineConfig& config);

// Whitens every member pixel of every non-Text component in place and
// returns the surviving text components.
std::vector<ConnectedComponent> remove_nontext(GrayImage& image,
                                               std::vector<ConnectedComponent> components,
                                               const std::vector<RegionClass>& classes);

// Debug graymap: Text=0, lines=96, Noise=160, NonText=192, background=255.
GrayImage render_overlay(int width, int height,
                         const std::vector<ConnectedComponent>& components,
                         const std::vector<RegionClass>& classes);

} // namespace cardbin
