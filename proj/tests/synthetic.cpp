#include "synthetic.hpp"

namespace synthetic {

using stereotk::BoundaryMask;
using stereotk::DisparityMap;
using stereotk::GrayImage;
using stereotk::RgbImage;
using stereotk::StereoPair;

RgbImage random_rgb(int width, int height, std::uint32_t seed) {
    std::mt19937 rng(seed);
    RgbImage image(width, height);
    for (std::uint8_t& v : image.data) {
        v = next_byte(rng);
    }
    return image;
}

GrayImage random_gray(int width, int height, std::uint32_t seed) {
    std::mt19937 rng(seed);
    GrayImage image(width, height);
    for (std::uint8_t& v : image.data) {
        v = next_byte(rng);
    }
    return image;
}

BoundaryMask random_mask(int width, int height, std::uint32_t seed,
                         int percent) {
    std::mt19937 rng(seed);
    BoundaryMask mask(width, height);
    for (std::uint8_t& v : mask.mask) {
        v = (rng() % 100) < static_cast<std::uint32_t>(percent) ? 1 : 0;
    }
    return mask;
}

DisparityMap random_sparse(int width, int height, std::uint32_t seed,
                           int percent, int d_max) {
    std::mt19937 rng(seed);
    DisparityMap map(width, height);
    for (std::int16_t& v : map.values) {
        if ((rng() % 100) < static_cast<std::uint32_t>(percent)) {
            v = static_cast<std::int16_t>(rng() % (d_max + 1));
        }
    }
    return map;
}

namespace {

// Split one wide image into a translated pair: left(x) = wide(x),
// right(x) = wide(x + shift).
StereoPair split_wide(const RgbImage& wide, int width, int shift) {
    StereoPair pair;
    pair.left = RgbImage(width, wide.height);
    pair.right = RgbImage(width, wide.height);
    for (int y = 0; y < wide.height; ++y) {
        for (int x = 0; x < width; ++x) {
            for (int c = 0; c < 3; ++c) {
                pair.left.at(x, y, c) = wide.at(x, y, c);
                pair.right.at(x, y, c) = wide.at(x + shift, y, c);
            }
        }
    }
    return pair;
}

void draw_grey_noise_rect(RgbImage& image, std::mt19937& rng, int x0, int y0,
                          int x1, int y1, int base, int spread) {
    for (int y = y0; y < y1; ++y) {
        for (int x = x0; x < x1; ++x) {
            const std::uint8_t v = next_level(rng, base, spread);
            image.at(x, y, 0) = v;
            image.at(x, y, 1) = v;
            image.at(x, y, 2) = v;
        }
    }
}

} // namespace

StereoPair translated_noise_pair(int width, int height, int shift,
                                 std::uint32_t seed) {
    const RgbImage wide = random_rgb(width + shift, height, seed);
    return split_wide(wide, width, shift);
}

StereoPair rectangle_scene_pair(int width, int height, int shift,
                                std::uint32_t seed) {
    std::mt19937 rng(seed);
    RgbImage wide(width + shift, height);
    draw_grey_noise_rect(wide, rng, 0, 0, wide.width, height, 20, 50);
    // Rectangles sit well inside the frame: their outlines stay at least a
    // half window plus the largest shift away from every border.
    const int ax0 = width * 2 / 10, ax1 = width * 4 / 10;
    const int ay0 = height * 2 / 10, ay1 = height * 5 / 10;
    const int bx0 = width * 6 / 10, bx1 = width * 9 / 10;
    const int by0 = height * 55 / 100, by1 = height * 85 / 100;
    draw_grey_noise_rect(wide, rng, ax0, ay0, ax1, ay1, 150, 70);
    draw_grey_noise_rect(wide, rng, bx0, by0, bx1, by1, 150, 70);
    return split_wide(wide, width, shift);
}

StereoPair bench_frame(int width, int height, std::uint32_t seed) {
    std::mt19937 rng(seed);
    const int shift = 5;
    RgbImage wide(width + shift, height);
    draw_grey_noise_rect(wide, rng, 0, 0, wide.width, height, 8, 40);
    // A loose grid of rectangles drawn from four well-separated lightness
    // bands, so ten-cluster segmentation yields a realistic boundary load.
    const int bases[4] = {60, 110, 160, 210};
    const int cell = 96;
    int band = 0;
    for (int gy = 12; gy + cell < height - 12; gy += cell + 14) {
        for (int gx = 12; gx + cell < width - 12; gx += cell + 14) {
            const int inset_x = static_cast<int>(rng() % 24);
            const int inset_y = static_cast<int>(rng() % 24);
            draw_grey_noise_rect(wide, rng, gx + inset_x, gy + inset_y,
                                 gx + cell - 4, gy + cell - 4,
                                 bases[band % 4], 36);
            ++band;
        }
    }
    return split_wide(wide, width, shift);
}

} // namespace synthetic
