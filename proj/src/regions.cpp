#include "cardbin/regions.hpp"

#include <algorithm>
#include <cstring>

#include "cardbin/kernels.hpp"

namespace cardbin {
namespace {

// Mark-on-push span fill; every pixel is pushed exactly once.
struct SpanFill {
    const GrayImage& image;
    std::vector<std::uint8_t> visited;
    std::vector<PixelSpan> stack;
    MemoryLedger* ledger;
    std::size_t stack_high_water = 0;

    SpanFill(const GrayImage& img, MemoryLedger* led)
        : image(img),
          visited((std::size_t(img.width) * img.height + 7) / 8, 0),
          ledger(led) {
        if (ledger) ledger->add(visited.size());
    }
    ~SpanFill() {
        if (ledger) ledger->sub(visited.size() + stack_high_water);
    }

    bool seen(int x, int y) const {
        std::size_t i = std::size_t(y) * image.width + x;
        return (visited[i >> 3] >> (i & 7)) & 1;
    }
    void mark(int x0, int x1, int y) {
        for (int x = x0; x < x1; ++x) {
            std::size_t i = std::size_t(y) * image.width + x;
            visited[i >> 3] |= std::uint8_t(1u << (i & 7));
        }
    }
    bool member(int x, int y) const { return image.at(x, y) < 255 && !seen(x, y); }

    void push(PixelSpan s) {
        stack.push_back(s);
        std::size_t cap = stack.capacity() * sizeof(PixelSpan);
        if (cap > stack_high_water) {
            if (ledger) ledger->add(cap - stack_high_water);
            stack_high_water = cap;
        }
    }
};

void merge_sorted_spans(std::vector<PixelSpan>& spans) {
    std::sort(spans.begin(), spans.end(), [](const PixelSpan& a, const PixelSpan& b) {
        return a.y != b.y ? a.y < b.y : a.x0 < b.x0;
    });
    std::size_t out = 0;
    for (std::size_t i = 0; i < spans.size(); ++i) {
        if (out > 0 && spans[out - 1].y == spans[i].y && spans[out - 1].x1 == spans[i].x0)
            spans[out - 1].x1 = spans[i].x1;
        else
            spans[out++] = spans[i];
    }
    spans.resize(out);
}

void finish_component(ConnectedComponent& cc, const GrayImage& image) {
    merge_sorted_spans(cc.spans);
    const auto& k = kernels::active();
    int min_x = image.width, max_x = -1, min_y = image.height, max_y = -1;
    kernels::MinMaxU8 mm{255, 0};
    long long area = 0;
    for (const PixelSpan& s : cc.spans) {
        min_x = std::min(min_x, s.x0);
        max_x = std::max(max_x, s.x1 - 1);
        min_y = std::min(min_y, s.y);
        max_y = std::max(max_y, s.y);
        area += s.x1 - s.x0;
        auto r = k.min_max(image.row(s.y) + s.x0, std::size_t(s.x1 - s.x0));
        mm.min = std::min(mm.min, r.min);
        mm.max = std::max(mm.max, r.max);
    }
    cc.bbox = {min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
    cc.area = area;
    cc.g_min = mm.min;
    cc.g_max = mm.max;
    cc.fill_ratio_pct = component_fill_ratio(cc, image);
}

} // namespace

const char* to_string(RegionClass cls) {
    switch (cls) {
        case RegionClass::Text: return "text";
        case RegionClass::Noise: return "noise";
        case RegionClass::HorizontalLine: return "hline";
        case RegionClass::VerticalLine: return "vline";
        case RegionClass::NonText: return "nontext";
    }
    return "nontext";
}

RegionThresholds RegionThresholds::from(int image_w, int image_h,
                                        const PipelineConfig& config) {
    RegionThresholds th;
    th.h_th = image_h / config.h_th_divisor;
    th.w_th = image_w / config.w_th_divisor;
    th.a_th = (long long)image_w * image_h / config.a_th_divisor;
    th.b_th = image_h / config.b_th_divisor;
    th.l_th = image_w / config.l_th_divisor;
    return th;
}

std::vector<ConnectedComponent> extract_components(const GrayImage& image,
                                                   MemoryLedger* ledger) {
    std::vector<ConnectedComponent> components;
    SpanFill fill(image, ledger);
    const int w = image.width, h = image.height;

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!fill.member(x, y)) continue;

            // Seed run: nothing to the left can be part of this component,
            // or the component would have been discovered already.
            int rx = x + 1;
            while (rx < w && fill.member(rx, y)) ++rx;
            fill.mark(x, rx, y);
            fill.push({y, x, rx});

            ConnectedComponent cc;
            cc.label = int(components.size());
            while (!fill.stack.empty()) {
                PixelSpan s = fill.stack.back();
                fill.stack.pop_back();
                cc.spans.push_back(s);
                for (int ny : {s.y - 1, s.y + 1}) {
                    if (ny < 0 || ny >= h) continue;
                    // 8-connectivity: adjacent rows couple across [x0-1, x1].
                    const int lo = std::max(0, s.x0 - 1);
                    const int hi = std::min(w, s.x1 + 1);
                    int cx = lo;
                    while (cx < hi) {
                        if (!fill.member(cx, ny)) {
                            ++cx;
                            continue;
                        }
                        int lx = cx;
                        while (lx > 0 && fill.member(lx - 1, ny)) --lx;
                        int rright = cx + 1;
                        while (rright < w && fill.member(rright, ny)) ++rright;
                        fill.mark(lx, rright, ny);
                        fill.push({ny, lx, rright});
                        cx = rright;
                    }
                }
            }
            finish_component(cc, image);
            components.push_back(std::move(cc));
        }
    }
    return components;
}

int component_fill_ratio(const ConnectedComponent& cc, const GrayImage& image) {
    const auto& k = kernels::active();
    const std::uint8_t mid = std::uint8_t((int(cc.g_min) + int(cc.g_max)) / 2);
    long long foreground = 0;
    for (const PixelSpan& s : cc.spans)
        foreground += (long long)k.count_lt(image.row(s.y) + s.x0, std::size_t(s.x1 - s.x0), mid);
    return cc.area > 0 ? int(100 * foreground / cc.area) : 0;
}

RegionClass classify_component(const ConnectedComponent& cc, const RegionThresholds& th,
                               const PipelineConfig& config) {
    const int h = cc.bbox.h, w = cc.bbox.w;
    if (h < th.b_th && w > th.l_th) return RegionClass::HorizontalLine;
    if (w < th.b_th && h > th.l_th) return RegionClass::VerticalLine;
    if (h < th.h_th || w < th.w_th || cc.area < th.a_th) return RegionClass::Noise;
    const bool ratio_ok = (long long)config.r_min_x10 * h < 10LL * w &&
                          10LL * w < (long long)config.r_max_x10 * h;
    const bool fill_ok =
        config.ra_min < cc.fill_ratio_pct && cc.fill_ratio_pct < config.ra_max;
    return ratio_ok && fill_ok ? RegionClass::Text : RegionClass::NonText;
}

RegionClass classify_component(const ConnectedComponent& cc, int image_w, int image_h,
                               const PipelineConfig& config) {
    return classify_component(cc, RegionThresholds::from(image_w, image_h, config), config);
}

std::vector<ConnectedComponent> remove_nontext(GrayImage& image,
                                               std::vector<ConnectedComponent> components,
                                               const std::vector<RegionClass>& classes) {
    std::vector<ConnectedComponent> text;
    for (std::size_t i = 0; i < components.size(); ++i) {
        if (classes[i] == RegionClass::Text) {
            text.push_back(std::move(components[i]));
        } else {
            for (const PixelSpan& s : components[i].spans)
                std::memset(image.row(s.y) + s.x0, 255, std::size_t(s.x1 - s.x0));
        }
    }
    return text;
}

GrayImage render_overlay(int width, int height,
                         const std::vector<ConnectedComponent>& components,
                         const std::vector<RegionClass>& classes) {
    GrayImage out(width, height, 255);
    for (std::size_t i = 0; i < components.size(); ++i) {
        std::uint8_t shade = 192;
        switch (classes[i]) {
            case RegionClass::Text: shade = 0; break;
            case RegionClass::HorizontalLine:
            case RegionClass::VerticalLine: shade = 96; break;
            case RegionClass::Noise: shade = 160; break;
            case RegionClass::NonText: shade = 192; break;
        }
        for (const PixelSpan& s : components[i].spans)
            std::memset(out.row(s.y) + s.x0, shade, std::size_t(s.x1 - s.x0));
    }
    return out;
}

} // namespace cardbin
