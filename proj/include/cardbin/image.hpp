#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cardbin {

// 8-bit single-channel raster, row-major, 0 = darkest, 255 = lightest.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    GrayImage() = default;
    GrayImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t* row(int y) { return data.data() + static_cast<std::size_t>(y) * width; }
    const std::uint8_t* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width; }

    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    std::size_t bytes() const { return data.size(); }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    bool operator==(const GrayImage&) const = default;
};

// Two-level raster, one byte per pixel, 1 = foreground (ink), 0 = background.
// Packing to bit rows happens only at save time.
struct BinaryImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data;

    BinaryImage() = default;
    BinaryImage(int w, int h, std::uint8_t fill = 0)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, fill) {}

    std::uint8_t* row(int y) { return data.data() + static_cast<std::size_t>(y) * width; }
    const std::uint8_t* row(int y) const { return data.data() + static_cast<std::size_t>(y) * width; }

    std::uint8_t& at(int x, int y) { return data[static_cast<std::size_t>(y) * width + x]; }
    std::uint8_t at(int x, int y) const { return data[static_cast<std::size_t>(y) * width + x]; }

    std::size_t bytes() const { return data.size(); }

    bool operator==(const BinaryImage&) const = default;
};

// Axis-aligned pixel rectangle, [x, x+w) x [y, y+h).
struct Box {
    int x = 0;
    int y = 0;
    int w = 0;
    int h = 0;

    bool contains(int px, int py) const {
        return px >= x && px < x + w && py >= y && py < y + h;
    }
    bool operator==(const Box&) const = default;
};

} // namespace cardbin
