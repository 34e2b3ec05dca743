#include "stereotk/image.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "stereotk/parallel.hpp"

namespace stereotk {

namespace {

// Inverse sRGB companding: 8-bit channel -> linear intensity in [0, 1].
double srgb_to_linear(int v) {
    const double c = v / 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

// CIE constants: epsilon = (6/29)^3, kappa = (29/3)^3.
constexpr double kEpsilon = 216.0 / 24389.0;
constexpr double kKappa = 24389.0 / 27.0;

} // namespace

GrayImage rgb_to_lightness(const RgbImage& image, int workers) {
    // The companding curve only depends on the 8-bit channel value, so
    // precompute it once; every pixel then performs the identical sequence
    // of floating-point operations no matter how rows are partitioned.
    std::array<double, 256> linear{};
    for (int v = 0; v < 256; ++v) {
        linear[v] = srgb_to_linear(v);
    }

    GrayImage out(image.width, image.height);
    const int width = image.width;
    parallel_for(image.height, workers, [&](std::int64_t y) {
        const std::uint8_t* src =
            image.data.data() + static_cast<std::size_t>(y) * width * 3;
        std::uint8_t* dst = out.data.data() + static_cast<std::size_t>(y) * width;
        for (int x = 0; x < width; ++x) {
            const double luminance = 0.2126 * linear[src[x * 3 + 0]] +
                                     0.7152 * linear[src[x * 3 + 1]] +
                                     0.0722 * linear[src[x * 3 + 2]];
            const double f = luminance > kEpsilon
                                 ? std::cbrt(luminance)
                                 : (kKappa * luminance + 16.0) / 116.0;
            const double lstar = 116.0 * f - 16.0;
            const long scaled = std::lround(lstar * 255.0 / 100.0);
            dst[x] = static_cast<std::uint8_t>(std::clamp(scaled, 0L, 255L));
        }
    });
    return out;
}

} // namespace stereotk
