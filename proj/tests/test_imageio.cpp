#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <random>
#include <sstream>
#include <string>

#include "cardbin/pnm.hpp"

using namespace cardbin;

namespace {

// Independent luma oracle: long-form 64-bit evaluation of the weighted sum.
int luma_oracle(int r, int g, int b) {
    long long num = 299LL * r;
    num += 587LL * g;
    num += 114LL * b;
    long long q = 0;
    while ((q + 1) * 1000 <= num) ++q; // truncating division by repeated bound
    return int(q);
}

// Independent packing oracle for a single row of w bits.
std::vector<std::uint8_t> pack_oracle(const std::vector<int>& bits) {
    std::vector<std::uint8_t> out((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) out[i / 8] = std::uint8_t(out[i / 8] | (1u << (7 - i % 8)));
    return out;
}

GrayImage random_image(std::mt19937& rng, int w, int h) {
    GrayImage img(w, h);
    for (auto& p : img.data) p = std::uint8_t(rng() % 256);
    return img;
}

std::string bytes(std::initializer_list<int> vals) {
    std::string s;
    for (int v : vals) s.push_back(char(v));
    return s;
}

} // namespace

TEST_CASE("rgb_to_gray spot values") {
    CHECK(rgb_to_gray(0, 0, 0) == 0);
    CHECK(rgb_to_gray(255, 255, 255) == 255);
    CHECK(rgb_to_gray(0, 255, 0) == 149); // (587*255)/1000 truncated
    CHECK(rgb_to_gray(255, 0, 0) == 76);  // (299*255)/1000 truncated
}

TEST_CASE("rgb_to_gray equals the scalar oracle on a sweep") {
    std::mt19937 rng(7);
    for (int i = 0; i < 20000; ++i) {
        int r = int(rng() % 256), g = int(rng() % 256), b = int(rng() % 256);
        REQUIRE(rgb_to_gray(r, g, b) == luma_oracle(r, g, b));
    }
}

TEST_CASE("gray input maps to itself, exhaustively") {
    for (int x = 0; x < 256; ++x) REQUIRE(rgb_to_gray(x, x, x) == x);
}

TEST_CASE("P5 decode is the identity on maxval 255") {
    std::istringstream in("P5 2 2 255 " + bytes({0, 128, 255, 7}), std::ios::binary);
    // header separator is the space before the raster; rebuild precisely:
    std::istringstream exact(std::string("P5\n2 2\n255\n") + bytes({0, 128, 255, 7}),
                             std::ios::binary);
    GrayImage img = load_image(exact);
    CHECK(img.width == 2);
    CHECK(img.height == 2);
    CHECK(img.data == std::vector<std::uint8_t>({0, 128, 255, 7}));
}

TEST_CASE("P2 decode parses ascii samples and comments") {
    std::istringstream in("P2\n# a comment\n3 1\n255\n0 128  255\n");
    GrayImage img = load_image(in);
    CHECK(img.data == std::vector<std::uint8_t>({0, 128, 255}));
}

TEST_CASE("P6 decode converts through the luma formula") {
    std::istringstream white(std::string("P6\n1 1\n255\n") + bytes({255, 255, 255}),
                             std::ios::binary);
    CHECK(load_image(white).data == std::vector<std::uint8_t>({255}));

    std::istringstream red(std::string("P6\n1 1\n255\n") + bytes({255, 0, 0}),
                           std::ios::binary);
    CHECK(load_image(red).data == std::vector<std::uint8_t>({76}));
}

TEST_CASE("P6 rows decode through the same luma as the scalar formula") {
    std::mt19937 rng(31);
    const int w = 37, h = 5;
    std::string raster;
    std::vector<std::uint8_t> expected;
    for (int i = 0; i < w * h; ++i) {
        const int r = int(rng() % 256), g = int(rng() % 256), b = int(rng() % 256);
        raster.push_back(char(r));
        raster.push_back(char(g));
        raster.push_back(char(b));
        expected.push_back(luma_oracle(r, g, b));
    }
    std::istringstream in("P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n" +
                              raster,
                          std::ios::binary);
    CHECK(load_image(in).data == expected);
}

TEST_CASE("graymap maxval rescaling rounds to nearest") {
    std::istringstream in("P2\n3 1\n100\n0 50 100\n");
    GrayImage img = load_image(in);
    CHECK(img.data == std::vector<std::uint8_t>({0, 128, 255})); // (50*255+50)/100
}

TEST_CASE("16-bit graymap samples are big-endian") {
    std::istringstream in(std::string("P5\n2 1\n65535\n") + bytes({0xFF, 0xFF, 0x00, 0x00}),
                          std::ios::binary);
    GrayImage img = load_image(in);
    CHECK(img.data == std::vector<std::uint8_t>({255, 0}));
}

TEST_CASE("decode errors") {
    std::istringstream bad_magic("P3\n1 1\n255\n1 2 3\n");
    CHECK_THROWS_AS(load_image(bad_magic), ImageIoError);

    std::istringstream not_pnm("hello");
    CHECK_THROWS_AS(load_image(not_pnm), ImageIoError);

    std::istringstream big_maxval("P2\n1 1\n65536\n0\n");
    CHECK_THROWS_AS(load_image(big_maxval), ImageIoError);

    std::istringstream truncated(std::string("P5\n2 2\n255\n") + bytes({1, 2}),
                                 std::ios::binary);
    CHECK_THROWS_AS(load_image(truncated), ImageIoError);

    std::istringstream over_range("P2\n1 1\n100\n101\n");
    CHECK_THROWS_AS(load_image(over_range), ImageIoError);

    CHECK_THROWS_AS(load_image("/nonexistent/file.pgm"), ImageIoError);
}

TEST_CASE("graymap round-trip identity on random rasters") {
    std::mt19937 rng(123);
    for (int iter = 0; iter < 50; ++iter) {
        GrayImage img = random_image(rng, 1 + int(rng() % 40), 1 + int(rng() % 40));
        std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
        save_gray(img, buf);
        buf.seekg(0);
        REQUIRE(load_image(buf) == img);
    }
}

TEST_CASE("bitmap packing: all-zero row and alternating row") {
    BinaryImage zeros(8, 1, 0);
    CHECK(pack_bitmap_rows(zeros) == std::vector<std::uint8_t>({0x00}));

    BinaryImage alt(8, 1);
    for (int x = 0; x < 8; ++x) alt.at(x, 0) = std::uint8_t(x % 2 == 0 ? 1 : 0);
    CHECK(pack_bitmap_rows(alt) == std::vector<std::uint8_t>({0xAA}));
}

TEST_CASE("bitmap packing matches the oracle over all 256 single-byte rows") {
    for (int pattern = 0; pattern < 256; ++pattern) {
        BinaryImage img(8, 1);
        std::vector<int> bits(8);
        for (int x = 0; x < 8; ++x) {
            bits[x] = (pattern >> (7 - x)) & 1;
            img.at(x, 0) = std::uint8_t(bits[x]);
        }
        REQUIRE(pack_bitmap_rows(img) == pack_oracle(bits));
    }
}

TEST_CASE("bitmap rows are padded to byte boundaries") {
    BinaryImage img(10, 2, 0);
    img.at(9, 0) = 1;
    img.at(0, 1) = 1;
    auto packed = pack_bitmap_rows(img);
    REQUIRE(packed.size() == 4);
    CHECK(packed[0] == 0x00);
    CHECK(packed[1] == 0x40); // bit 9 = second byte, msb-1
    CHECK(packed[2] == 0x80);
    CHECK(packed[3] == 0x00);
}

TEST_CASE("save_binary emits a P4 header") {
    BinaryImage img(3, 1, 1);
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    save_binary(img, buf);
    const std::string s = buf.str();
    CHECK(s.substr(0, 3) == "P4\n");
    CHECK(s.back() == char(0xE0));
}
