#include "cardbin/generator.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <random>
#include <sstream>

#include "cardbin/skew.hpp"

namespace cardbin {
namespace {

constexpr double kPi = 3.14159265358979323846;

// mt19937_64 output is standard-defined; modulo sampling keeps generated
// cards identical across standard libraries.
int rand_in(std::mt19937_64& rng, int lo, int hi) {
    return lo + int(rng() % std::uint64_t(hi - lo + 1));
}

std::uint8_t clamp_u8(int v) { return std::uint8_t(std::clamp(v, 0, 255)); }

[[noreturn]] void fail(int line, const std::string& message) {
    throw SpecError("card spec line " + std::to_string(line) + ": " + message);
}

// A text bar that reads as one connected stroke set: a solid baseline strip
// with vertical teeth rising from it, so every stroke joins one component.
// Teeth stay clear of the strip ends: a tall stroke at the very end would
// swing past the strip under rotation and its side edge would then be what
// the bottom profile measures instead of the baseline.
void draw_comb(GrayImage& patch, int ox, int oy, int w, int h, int ink,
               std::mt19937_64& rng) {
    const int bar_h = std::max(2, h / 6);
    const int tooth_w = std::max(2, h / 10);
    const int pitch = 3 * tooth_w;
    const int inset = std::max(2 * tooth_w, h / 4);

    auto put = [&](int x, int y) {
        patch.at(ox + x, oy + y) = clamp_u8(ink + rand_in(rng, -12, 12));
    };

    for (int y = h - bar_h; y < h; ++y)
        for (int x = 0; x < w; ++x) put(x, y);

    bool first_tooth = true;
    for (int tx = inset; tx + tooth_w + inset <= w; tx += pitch) {
        // one full-height tooth pins the box height, the rest vary
        const int top = first_tooth ? 0 : rand_in(rng, 0, h / 4);
        first_tooth = false;
        for (int y = top; y < h - bar_h; ++y)
            for (int x = tx; x < tx + tooth_w; ++x) put(x, y);
    }
}

Box ink_bbox(const GrayImage& patch) {
    int min_x = patch.width, max_x = -1, min_y = patch.height, max_y = -1;
    for (int y = 0; y < patch.height; ++y) {
        const std::uint8_t* row = patch.row(y);
        for (int x = 0; x < patch.width; ++x) {
            if (row[x] == 255) continue;
            min_x = std::min(min_x, x);
            max_x = std::max(max_x, x);
            min_y = std::min(min_y, y);
            max_y = std::max(max_y, y);
        }
    }
    if (max_x < 0) return {0, 0, 0, 0};
    return {min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
}

// Paste sub-255 pixels with a min blend; the 255 rotation fill never wins.
void paste_ink(const GrayImage& patch, GrayImage& canvas, int ox, int oy) {
    for (int y = 0; y < patch.height; ++y) {
        const std::uint8_t* src = patch.row(y);
        for (int x = 0; x < patch.width; ++x) {
            if (src[x] == 255) continue;
            std::uint8_t& dst = canvas.at(ox + x, oy + y);
            dst = std::min(dst, src[x]);
        }
    }
}

bool near_box(const Box& a, const Box& b, int margin) {
    return a.x < b.x + b.w + margin && b.x < a.x + a.w + margin &&
           a.y < b.y + b.h + margin && b.y < a.y + a.h + margin;
}

} // namespace

CardSpec parse_card_spec(std::istream& in) {
    CardSpec spec;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::istringstream fields(raw);
        std::string directive;
        if (!(fields >> directive)) continue;
        if (directive.front() == '#') continue;

        auto read_ints = [&](int count, int* out) {
            for (int i = 0; i < count; ++i)
                if (!(fields >> out[i])) fail(line, "expected " + std::to_string(count) +
                                                        " integer fields after '" + directive + "'");
        };

        if (directive == "size") {
            int d[2];
            read_ints(2, d);
            spec.width = d[0];
            spec.height = d[1];
        } else if (directive == "background") {
            read_ints(1, &spec.background);
        } else if (directive == "gradient") {
            read_ints(1, &spec.gradient);
        } else if (directive == "ink") {
            read_ints(1, &spec.ink);
        } else if (directive == "jitter") {
            read_ints(1, &spec.jitter);
        } else if (directive == "speckle") {
            read_ints(1, &spec.speckle);
        } else if (directive == "text") {
            int d[4];
            read_ints(4, d);
            double deg;
            if (!(fields >> deg)) fail(line, "expected skew degrees after text box");
            spec.texts.push_back({{d[0], d[1], d[2], d[3]}, deg});
        } else if (directive == "hline") {
            int d[4];
            read_ints(4, d);
            spec.hlines.push_back({d[0], d[1], d[2], d[3]});
        } else if (directive == "vline") {
            int d[4];
            read_ints(4, d);
            spec.vlines.push_back({d[0], d[1], d[2], d[3]});
        } else {
            fail(line, "unknown directive '" + directive + "'");
        }
    }
    return spec;
}

CardSpec load_card_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError("cannot open card spec " + path);
    return parse_card_spec(in);
}

GeneratedCard generate_card(const CardSpec& spec, std::uint64_t seed) {
    if (spec.width < 128 || spec.height < 96)
        throw SpecError("card dimensions must be at least 128x96");
    if (spec.background < 1 || spec.background > 255)
        throw SpecError("background intensity out of range");
    if (spec.ink < 0 || spec.ink >= spec.background)
        throw SpecError("ink intensity must be darker than the background");
    if (spec.gradient < 0 || spec.jitter < 0 || spec.speckle < 0)
        throw SpecError("gradient, jitter and speckle must be nonnegative");

    std::mt19937_64 rng(seed);
    GeneratedCard card;
    card.image = GrayImage(spec.width, spec.height);

    for (int x = 0; x < spec.width; ++x) {
        const int base = spec.background - spec.gradient * x / std::max(1, spec.width - 1);
        for (int y = 0; y < spec.height; ++y) {
            const int j = spec.jitter > 0 ? rand_in(rng, -spec.jitter, spec.jitter) : 0;
            card.image.at(x, y) = clamp_u8(base + j);
        }
    }

    auto check_inside = [&](const Box& b, const char* what) {
        if (b.x < 0 || b.y < 0 || b.w < 1 || b.h < 1 || b.x + b.w > spec.width ||
            b.y + b.h > spec.height)
            throw SpecError(std::string(what) + " box outside canvas");
    };

    for (const Box& b : spec.hlines) {
        check_inside(b, "hline");
        for (int y = b.y; y < b.y + b.h; ++y)
            for (int x = b.x; x < b.x + b.w; ++x)
                card.image.at(x, y) = clamp_u8(spec.ink + rand_in(rng, -12, 12));
        card.annotations.push_back({AnnotationKind::NonText, b});
    }
    for (const Box& b : spec.vlines) {
        check_inside(b, "vline");
        for (int y = b.y; y < b.y + b.h; ++y)
            for (int x = b.x; x < b.x + b.w; ++x)
                card.image.at(x, y) = clamp_u8(spec.ink + rand_in(rng, -12, 12));
        card.annotations.push_back({AnnotationKind::NonText, b});
    }

    for (const TextBar& bar : spec.texts) {
        check_inside(bar.box, "text");
        // Outside (1.2, 32) the bar could never classify as text.
        if (12LL * bar.box.h >= 10LL * bar.box.w || 10LL * bar.box.w >= 320LL * bar.box.h)
            throw SpecError("text box aspect ratio outside the text range");

        const double rad = bar.skew_deg * kPi / 180.0;
        const double c = std::abs(std::cos(rad)), s = std::abs(std::sin(rad));
        const int pad_x = int(std::ceil((bar.box.w * c + bar.box.h * s - bar.box.w) / 2)) + 2;
        const int pad_y = int(std::ceil((bar.box.w * s + bar.box.h * c - bar.box.h) / 2)) + 2;

        GrayImage patch(bar.box.w + 2 * pad_x, bar.box.h + 2 * pad_y, 255);
        draw_comb(patch, pad_x, pad_y, bar.box.w, bar.box.h, spec.ink, rng);
        if (rad != 0.0) patch = rotate_patch(patch, rad);

        const Box local = ink_bbox(patch);
        const Box placed = {bar.box.x - pad_x + local.x, bar.box.y - pad_y + local.y, local.w,
                            local.h};
        check_inside(placed, "rotated text");
        paste_ink(patch, card.image, bar.box.x - pad_x, bar.box.y - pad_y);
        card.annotations.push_back({AnnotationKind::Text, placed});
    }

    const int margin = 40;
    std::vector<Box> keep_out;
    for (const Annotation& a : card.annotations) keep_out.push_back(a.box);
    for (int i = 0; i < spec.speckle; ++i) {
        for (int attempt = 0; attempt < 100; ++attempt) {
            const int size = rand_in(rng, 1, 3);
            const int x = rand_in(rng, 8, spec.width - 8 - size);
            const int y = rand_in(rng, 8, spec.height - 8 - size);
            const Box dot{x, y, size, size};
            bool blocked = false;
            for (const Box& b : keep_out)
                if (near_box(dot, b, margin)) {
                    blocked = true;
                    break;
                }
            if (blocked) continue;
            for (int dy = 0; dy < size; ++dy)
                for (int dx = 0; dx < size; ++dx)
                    card.image.at(x + dx, y + dy) = clamp_u8(spec.ink + rand_in(rng, -12, 12));
            card.annotations.push_back({AnnotationKind::NonText, dot});
            keep_out.push_back(dot);
            break;
        }
    }

    return card;
}

} // namespace cardbin
