#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace stereotk {

// 8-bit RGB image, row-major, interleaved channels.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // width * height * 3 bytes

    RgbImage() = default;
    RgbImage(int w, int h)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::uint8_t& at(int x, int y, int c) {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::uint8_t at(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * 3 + c];
    }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }
    bool same_size(const RgbImage& other) const {
        return width == other.width && height == other.height;
    }
};

// 8-bit single-channel image, row-major.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> data; // width * height bytes

    GrayImage() = default;
    GrayImage(int w, int h)
        : width(w), height(h), data(static_cast<std::size_t>(w) * h, 0) {}

    std::uint8_t& at(int x, int y) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t at(int x, int y) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::size_t pixel_count() const {
        return static_cast<std::size_t>(width) * height;
    }
};

// Load a colour image from `path`.  PNG (any bit depth / palette, reduced to
// 8-bit RGB) and binary PPM (P6, 8-bit) are supported; a binary PGM (P5) is
// accepted too and replicated across the three channels.  Throws IoError if
// the file cannot be read and FormatError if the contents are not a
// supported raster.
RgbImage load_image(const std::string& path);

// Load a single-channel image: binary PGM (P5, 8-bit) or a PNG whose pixels
// are grey (R == G == B after decoding).  If `comments` is non-null it
// receives the PGM header comment lines (without the leading '#'), which
// disparity files use to carry their encoding scale.
GrayImage load_gray(const std::string& path,
                    std::vector<std::string>* comments = nullptr);

// Write a single-channel image as binary PGM (P5, maxval 255).  Extra
// comment lines, if any, are emitted after the magic number.
void save_gray(const GrayImage& image, const std::string& path,
               const std::vector<std::string>& comments = {});

// Write an RGB image; the format is picked from the extension (".png" for
// PNG, anything else gets binary PPM).
void save_rgb(const RgbImage& image, const std::string& path);

// Convert an RGB image to its lightness plane: each pixel becomes the CIE
// L* of its sRGB colour, rescaled from [0, 100] to [0, 255] and rounded
// half-up.  Rows are processed independently, so the result is identical
// for every worker count.
GrayImage rgb_to_lightness(const RgbImage& image, int workers = 1);

} // namespace stereotk
