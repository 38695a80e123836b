#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <vector>

#include "cardbin/regions.hpp"

using namespace cardbin;

namespace {

using PixelSet = std::set<std::pair<int, int>>;

// Independent BFS flood-fill oracle over 8-connected sub-255 pixels.
std::vector<PixelSet> flood_fill_oracle(const GrayImage& img) {
    std::vector<PixelSet> out;
    std::vector<char> seen(img.data.size(), 0);
    for (int sy = 0; sy < img.height; ++sy) {
        for (int sx = 0; sx < img.width; ++sx) {
            const std::size_t si = std::size_t(sy) * img.width + sx;
            if (seen[si] || img.at(sx, sy) == 255) continue;
            PixelSet comp;
            std::deque<std::pair<int, int>> queue{{sx, sy}};
            seen[si] = 1;
            while (!queue.empty()) {
                auto [x, y] = queue.front();
                queue.pop_front();
                comp.insert({x, y});
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx, ny = y + dy;
                        if ((dx == 0 && dy == 0) || !img.in_bounds(nx, ny)) continue;
                        const std::size_t ni = std::size_t(ny) * img.width + nx;
                        if (seen[ni] || img.at(nx, ny) == 255) continue;
                        seen[ni] = 1;
                        queue.push_back({nx, ny});
                    }
            }
            out.push_back(std::move(comp));
        }
    }
    return out;
}

PixelSet span_pixels(const ConnectedComponent& cc) {
    PixelSet out;
    for (const PixelSpan& s : cc.spans)
        for (int x = s.x0; x < s.x1; ++x) out.insert({x, s.y});
    return out;
}

std::vector<PixelSet> sorted_partition(std::vector<PixelSet> sets) {
    std::sort(sets.begin(), sets.end());
    return sets;
}

GrayImage row_image(const std::vector<std::uint8_t>& pixels) {
    GrayImage img(int(pixels.size()), 1);
    img.data = pixels;
    return img;
}

ConnectedComponent synthetic_cc(int w, int h, long long area, int fill_pct) {
    ConnectedComponent cc;
    cc.bbox = {0, 0, w, h};
    cc.area = area;
    cc.fill_ratio_pct = fill_pct;
    return cc;
}

} // namespace

TEST_CASE("extraction basics") {
    CHECK(extract_components(GrayImage(6, 4, 255)).empty());

    GrayImage single(8, 8, 255);
    single.at(3, 3) = 0;
    auto ccs = extract_components(single);
    REQUIRE(ccs.size() == 1);
    CHECK(ccs[0].bbox == Box{3, 3, 1, 1});
    CHECK(ccs[0].area == 1);
    CHECK(ccs[0].label == 0);

    GrayImage diagonal(4, 4, 255);
    diagonal.at(1, 1) = 10;
    diagonal.at(2, 2) = 20;
    auto diag = extract_components(diagonal);
    REQUIRE(diag.size() == 1); // 8-connectivity joins the corner touch
    CHECK(diag[0].area == 2);
    CHECK(diag[0].g_min == 10);
    CHECK(diag[0].g_max == 20);
}

TEST_CASE("labels follow row-major first pixels") {
    GrayImage img(9, 3, 255);
    img.at(7, 0) = 0;             // first in row-major order
    img.at(1, 1) = 0;
    img.at(4, 2) = 0;
    auto ccs = extract_components(img);
    REQUIRE(ccs.size() == 3);
    CHECK(ccs[0].bbox.x == 7);
    CHECK(ccs[1].bbox.x == 1);
    CHECK(ccs[2].bbox.x == 4);
    for (std::size_t i = 0; i < ccs.size(); ++i) CHECK(ccs[i].label == int(i));
}

TEST_CASE("extraction partitions match the flood-fill oracle on random images") {
    std::mt19937 rng(2024);
    for (int iter = 0; iter < 200; ++iter) {
        GrayImage img(1 + int(rng() % 32), 1 + int(rng() % 32));
        for (auto& p : img.data)
            p = (rng() % 3 == 0) ? std::uint8_t(rng() % 255) : std::uint8_t(255);

        std::vector<PixelSet> got;
        for (const auto& cc : extract_components(img)) {
            REQUIRE(cc.area >= 1);
            got.push_back(span_pixels(cc));
            REQUIRE(got.back().size() == std::size_t(cc.area));
        }
        REQUIRE(sorted_partition(got) == sorted_partition(flood_fill_oracle(img)));
    }
}

TEST_CASE("bounding boxes are tight") {
    std::mt19937 rng(5);
    for (int iter = 0; iter < 50; ++iter) {
        GrayImage img(1 + int(rng() % 24), 1 + int(rng() % 24));
        for (auto& p : img.data)
            p = (rng() % 4 == 0) ? std::uint8_t(rng() % 255) : std::uint8_t(255);
        for (const auto& cc : extract_components(img)) {
            auto pixels = span_pixels(cc);
            int min_x = img.width, max_x = -1, min_y = img.height, max_y = -1;
            for (auto [x, y] : pixels) {
                min_x = std::min(min_x, x);
                max_x = std::max(max_x, x);
                min_y = std::min(min_y, y);
                max_y = std::max(max_y, y);
            }
            REQUIRE(cc.bbox == Box{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1});
        }
    }
}

TEST_CASE("fill ratio uses the midpoint threshold over member pixels") {
    auto flat = extract_components(row_image({50, 50, 50}));
    REQUIRE(flat.size() == 1);
    CHECK(flat[0].fill_ratio_pct == 0); // nothing strictly below the midpoint

    auto mixed = extract_components(row_image({0, 0, 0, 200, 200, 200, 200, 200, 200, 200}));
    REQUIRE(mixed.size() == 1);
    CHECK(mixed[0].fill_ratio_pct == 30); // midpoint 100, 3 of 10

    auto pair = extract_components(row_image({0, 254}));
    REQUIRE(pair.size() == 1);
    CHECK(pair[0].fill_ratio_pct == 50); // midpoint 127, 1 of 2
}

TEST_CASE("classification spot cases at 1024x768 defaults") {
    PipelineConfig config;
    // H_TH=12, W_TH=25, A_TH=524, B_TH=7, L_TH=25
    auto th = RegionThresholds::from(1024, 768, config);
    CHECK(th.h_th == 12);
    CHECK(th.w_th == 25);
    CHECK(th.a_th == 524);
    CHECK(th.b_th == 7);
    CHECK(th.l_th == 25);

    CHECK(classify_component(synthetic_cc(2, 2, 4, 50), 1024, 768, config) ==
          RegionClass::Noise);
    CHECK(classify_component(synthetic_cc(400, 3, 1200, 50), 1024, 768, config) ==
          RegionClass::HorizontalLine);
    CHECK(classify_component(synthetic_cc(3, 400, 1200, 50), 1024, 768, config) ==
          RegionClass::VerticalLine);
    // ratio exactly 1.0 fails the strict lower bound 1.2
    CHECK(classify_component(synthetic_cc(100, 100, 6000, 50), 1024, 768, config) ==
          RegionClass::NonText);
    CHECK(classify_component(synthetic_cc(200, 50, 6000, 50), 1024, 768, config) ==
          RegionClass::Text);
}

TEST_CASE("each rule isolated by explicit thresholds") {
    PipelineConfig config;
    RegionThresholds off{0, 0, 0, 0, 0}; // no rule can fire

    // height rule alone
    RegionThresholds h_only = off;
    h_only.h_th = 12;
    CHECK(classify_component(synthetic_cc(400, 10, 4000, 50), h_only, config) ==
          RegionClass::Noise);
    CHECK(classify_component(synthetic_cc(300, 12, 3600, 50), h_only, config) ==
          RegionClass::Text);

    // width rule alone
    RegionThresholds w_only = off;
    w_only.w_th = 25;
    CHECK(classify_component(synthetic_cc(24, 10, 240, 50), w_only, config) ==
          RegionClass::Noise);

    // area rule alone
    RegionThresholds a_only = off;
    a_only.a_th = 524;
    CHECK(classify_component(synthetic_cc(40, 20, 523, 50), a_only, config) ==
          RegionClass::Noise);
    CHECK(classify_component(synthetic_cc(40, 20, 524, 50), a_only, config) ==
          RegionClass::Text);

    // horizontal line rule alone
    RegionThresholds lines = off;
    lines.b_th = 7;
    lines.l_th = 25;
    CHECK(classify_component(synthetic_cc(400, 3, 1200, 50), lines, config) ==
          RegionClass::HorizontalLine);
    // vertical line rule alone
    CHECK(classify_component(synthetic_cc(3, 400, 1200, 50), lines, config) ==
          RegionClass::VerticalLine);

    // aspect-ratio rule alone: 1.2 and 32 are both excluded bounds
    CHECK(classify_component(synthetic_cc(12, 10, 120, 50), off, config) ==
          RegionClass::NonText);
    CHECK(classify_component(synthetic_cc(13, 10, 130, 50), off, config) == RegionClass::Text);
    CHECK(classify_component(synthetic_cc(320, 10, 3200, 50), off, config) ==
          RegionClass::NonText);
    CHECK(classify_component(synthetic_cc(319, 10, 3190, 50), off, config) ==
          RegionClass::Text);

    // fill-ratio bounds are strict as well
    CHECK(classify_component(synthetic_cc(200, 50, 6000, 5), off, config) ==
          RegionClass::NonText);
    CHECK(classify_component(synthetic_cc(200, 50, 6000, 6), off, config) == RegionClass::Text);
    CHECK(classify_component(synthetic_cc(200, 50, 6000, 90), off, config) ==
          RegionClass::NonText);
    CHECK(classify_component(synthetic_cc(200, 50, 6000, 89), off, config) == RegionClass::Text);
}

TEST_CASE("size rules are scale-consistent") {
    PipelineConfig config;
    std::mt19937 rng(11);
    for (int iter = 0; iter < 500; ++iter) {
        const int w = 1 + int(rng() % 200);
        const int h = 1 + int(rng() % 200);
        const long long area = 1 + (long long)(rng() % std::uint32_t(w * h));
        const int fill = int(rng() % 101);
        RegionThresholds th;
        th.h_th = int(rng() % 40);
        th.w_th = int(rng() % 40);
        th.a_th = rng() % 2000;
        th.b_th = int(rng() % 20);
        th.l_th = int(rng() % 60);

        const int k = 1 + int(rng() % 5);
        RegionThresholds scaled_th{th.h_th * k, th.w_th * k, th.a_th * k * k, th.b_th * k,
                                   th.l_th * k};
        auto cc = synthetic_cc(w, h, area, fill);
        auto scaled_cc = synthetic_cc(w * k, h * k, area * k * k, fill);
        REQUIRE(classify_component(cc, th, config) ==
                classify_component(scaled_cc, scaled_th, config));
    }
}

TEST_CASE("every component receives exactly one class") {
    PipelineConfig config;
    std::mt19937 rng(17);
    for (int iter = 0; iter < 2000; ++iter) {
        auto cc = synthetic_cc(1 + int(rng() % 500), 1 + int(rng() % 500),
                               1 + (long long)(rng() % 10000), int(rng() % 101));
        auto cls = classify_component(cc, 1024, 768, config);
        CHECK((cls == RegionClass::Text || cls == RegionClass::Noise ||
               cls == RegionClass::HorizontalLine || cls == RegionClass::VerticalLine ||
               cls == RegionClass::NonText));
    }
}

TEST_CASE("remove_nontext whitens only non-text members") {
    GrayImage img(20, 8, 255);
    for (int x = 2; x < 8; ++x)
        for (int y = 2; y < 5; ++y) img.at(x, y) = 40; // "text" blob
    for (int x = 10; x < 19; ++x) img.at(x, 6) = 30;   // "line"

    auto ccs = extract_components(img);
    REQUIRE(ccs.size() == 2);
    std::vector<RegionClass> classes{RegionClass::Text, RegionClass::HorizontalLine};

    GrayImage before = img;
    auto text = remove_nontext(img, std::move(ccs), classes);
    REQUIRE(text.size() == 1);
    CHECK(text[0].bbox == Box{2, 2, 6, 3});

    for (int x = 2; x < 8; ++x)
        for (int y = 2; y < 5; ++y) REQUIRE(img.at(x, y) == before.at(x, y));
    for (int x = 10; x < 19; ++x) REQUIRE(img.at(x, 6) == 255);
}

TEST_CASE("remove_nontext degenerate inputs") {
    GrayImage img(6, 6, 255);
    img.at(1, 1) = 0;
    auto ccs = extract_components(img);
    auto none = remove_nontext(img, std::move(ccs), {RegionClass::Noise});
    CHECK(none.empty());
    CHECK(img == GrayImage(6, 6, 255));

    GrayImage untouched(5, 5, 200);
    GrayImage copy = untouched;
    auto empty = remove_nontext(untouched, {}, {});
    CHECK(empty.empty());
    CHECK(untouched == copy);
}

TEST_CASE("overlay renders classes at distinct shades") {
    GrayImage img(12, 4, 255);
    img.at(1, 1) = 0;
    img.at(5, 2) = 0;
    img.at(8, 0) = 0;
    img.at(11, 3) = 0;
    auto ccs = extract_components(img);
    REQUIRE(ccs.size() == 4);
    GrayImage overlay = render_overlay(12, 4, ccs,
                                       {RegionClass::NonText, RegionClass::Text,
                                        RegionClass::Noise, RegionClass::HorizontalLine});
    CHECK(overlay.at(8, 0) == 192);
    CHECK(overlay.at(1, 1) == 0);
    CHECK(overlay.at(5, 2) == 160);
    CHECK(overlay.at(11, 3) == 96);
    CHECK(overlay.at(0, 0) == 255);
}
