#include "cardbin/pnm.hpp"

#include <fstream>
#include <istream>
#include <limits>
#include <ostream>

#include "cardbin/kernels.hpp"

namespace cardbin {
namespace {

constexpr long kMaxDimension = 1 << 20;

bool is_pnm_space(int c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
}

// Whitespace and '#' comments are interchangeable between header tokens.
void skip_header_junk(std::istream& in) {
    for (;;) {
        int c = in.peek();
        if (c == '#') {
            while (c != EOF && c != '\n') c = in.get();
        } else if (c != EOF && is_pnm_space(c)) {
            in.get();
        } else {
            return;
        }
    }
}

long read_header_number(std::istream& in, const char* what) {
    skip_header_junk(in);
    long value = 0;
    bool any = false;
    int c;
    while ((c = in.peek()) != EOF && c >= '0' && c <= '9') {
        in.get();
        value = value * 10 + (c - '0');
        if (value > std::numeric_limits<int>::max())
            throw ImageIoError(std::string("pnm header: ") + what + " out of range");
        any = true;
    }
    if (!any) throw ImageIoError(std::string("pnm header: missing ") + what);
    return value;
}

// value' = (value*255 + maxval/2) / maxval, exact for maxval == 255.
std::uint8_t rescale_sample(long value, long maxval) {
    if (maxval == 255) return std::uint8_t(value);
    return std::uint8_t((value * 255 + maxval / 2) / maxval);
}

long read_raw_sample(std::istream& in, bool two_byte) {
    int hi = in.get();
    if (hi == EOF) throw ImageIoError("pnm raster: unexpected end of file");
    if (!two_byte) return hi;
    int lo = in.get();
    if (lo == EOF) throw ImageIoError("pnm raster: unexpected end of file");
    return (long(hi) << 8) | lo;
}

long read_ascii_sample(std::istream& in) {
    skip_header_junk(in);
    long v = 0;
    bool any = false;
    int c;
    while ((c = in.peek()) != EOF && c >= '0' && c <= '9') {
        in.get();
        v = v * 10 + (c - '0');
        if (v > 65535) throw ImageIoError("pnm raster: sample out of range");
        any = true;
    }
    if (!any) throw ImageIoError("pnm raster: expected sample value");
    return v;
}

} // namespace

std::uint8_t rgb_to_gray(int r, int g, int b) {
    return std::uint8_t((299 * r + 587 * g + 114 * b) / 1000);
}

GrayImage load_image(std::istream& in) {
    int p = in.get();
    int digit = in.get();
    if (p != 'P' || digit == EOF) throw ImageIoError("pnm header: not a portable anymap");
    if (digit != '2' && digit != '5' && digit != '6')
        throw ImageIoError(std::string("pnm header: unsupported magic number P") +
                           char(digit));

    long width = read_header_number(in, "width");
    long height = read_header_number(in, "height");
    long maxval = read_header_number(in, "maxval");
    if (width < 1 || height < 1 || width > kMaxDimension || height > kMaxDimension)
        throw ImageIoError("pnm header: bad dimensions");
    if (maxval < 1 || maxval > 65535) throw ImageIoError("pnm header: bad maxval");

    GrayImage img(static_cast<int>(width), static_cast<int>(height));

    if (digit == '2') {
        for (std::size_t i = 0; i < img.data.size(); ++i) {
            long v = read_ascii_sample(in);
            if (v > maxval) throw ImageIoError("pnm raster: sample exceeds maxval");
            img.data[i] = rescale_sample(v, maxval);
        }
        return img;
    }

    // Binary rasters: exactly one whitespace byte separates maxval from data.
    int sep = in.get();
    if (sep == EOF || !is_pnm_space(sep))
        throw ImageIoError("pnm header: missing raster separator");

    const bool two_byte = maxval > 255;
    if (digit == '5') {
        if (maxval == 255) {
            in.read(reinterpret_cast<char*>(img.data.data()),
                    std::streamsize(img.data.size()));
            if (std::size_t(in.gcount()) != img.data.size())
                throw ImageIoError("pnm raster: unexpected end of file");
        } else {
            for (std::size_t i = 0; i < img.data.size(); ++i) {
                long v = read_raw_sample(in, two_byte);
                if (v > maxval) throw ImageIoError("pnm raster: sample exceeds maxval");
                img.data[i] = rescale_sample(v, maxval);
            }
        }
        return img;
    }

    // P6 pixmap.
    if (maxval == 255) {
        std::vector<std::uint8_t> rgb(img.data.size() * 3);
        in.read(reinterpret_cast<char*>(rgb.data()), std::streamsize(rgb.size()));
        if (std::size_t(in.gcount()) != rgb.size())
            throw ImageIoError("pnm raster: unexpected end of file");
        const auto& k = kernels::active();
        for (int y = 0; y < img.height; ++y)
            k.luma_row(rgb.data() + std::size_t(y) * img.width * 3, img.row(y),
                       std::size_t(img.width));
    } else {
        for (std::size_t i = 0; i < img.data.size(); ++i) {
            long r = read_raw_sample(in, two_byte);
            long g = read_raw_sample(in, two_byte);
            long b = read_raw_sample(in, two_byte);
            if (r > maxval || g > maxval || b > maxval)
                throw ImageIoError("pnm raster: sample exceeds maxval");
            img.data[i] = rgb_to_gray(rescale_sample(r, maxval), rescale_sample(g, maxval),
                                      rescale_sample(b, maxval));
        }
    }
    return img;
}

GrayImage load_image(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ImageIoError("cannot open " + path);
    return load_image(in);
}

void save_gray(const GrayImage& image, std::ostream& out) {
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(image.data.data()),
              std::streamsize(image.data.size()));
    if (!out) throw ImageIoError("graymap write failed");
}

void save_gray(const GrayImage& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ImageIoError("cannot open " + path + " for writing");
    save_gray(image, out);
}

std::vector<std::uint8_t> pack_bitmap_rows(const BinaryImage& image) {
    const std::size_t stride = (std::size_t(image.width) + 7) / 8;
    std::vector<std::uint8_t> packed(stride * image.height, 0);
    for (int y = 0; y < image.height; ++y) {
        const std::uint8_t* src = image.row(y);
        std::uint8_t* dst = packed.data() + stride * y;
        for (int x = 0; x < image.width; ++x)
            if (src[x]) dst[x >> 3] |= std::uint8_t(0x80u >> (x & 7));
    }
    return packed;
}

void save_binary(const BinaryImage& image, std::ostream& out) {
    out << "P4\n" << image.width << " " << image.height << "\n";
    auto packed = pack_bitmap_rows(image);
    out.write(reinterpret_cast<const char*>(packed.data()), std::streamsize(packed.size()));
    if (!out) throw ImageIoError("bitmap write failed");
}

void save_binary(const BinaryImage& image, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ImageIoError("cannot open " + path + " for writing");
    save_binary(image, out);
}

} // namespace cardbin
