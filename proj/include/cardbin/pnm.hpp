#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "cardbin/image.hpp"

namespace cardbin {

class ImageIoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Integer video luma, (299 r + 587 g + 114 b) / 1000 with truncation.
std::uint8_t rgb_to_gray(int r, int g, int b);

// Reads a P2/P5 graymap or P6 pixmap. Pixmaps are converted through
// rgb_to_gray; maxval != 255 is rescaled to [0,255] with round-to-nearest.
GrayImage load_image(const std::string& path);
GrayImage load_image(std::istream& in);

// Writes a binary graymap (P5, maxval 255). load_image(save_gray(x)) == x.
void save_gray(const GrayImage& image, const std::string& path);
void save_gray(const GrayImage& image, std::ostream& out);

// Writes a binary bitmap (P4), MSB-first, rows padded to byte boundaries.
void save_binary(const BinaryImage& image, const std::string& path);
void save_binary(const BinaryImage& image, std::ostream& out);

// The P4 raster payload; exposed for the packing tests.
std::vector<std::uint8_t> pack_bitmap_rows(const BinaryImage& image);

} // namespace cardbin
