#include "stereotk/refocus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stereotk/error.hpp"
#include "stereotk/parallel.hpp"

namespace stereotk {

int default_kernel_size(double sigma) {
    return 2 * static_cast<int>(std::ceil(3.0 * sigma)) + 1;
}

GaussianKernel gaussian_kernel(double sigma, int size) {
    if (!(sigma > 0.0)) {
        throw ParamError("gaussian_kernel: sigma must be positive, got " +
                         std::to_string(sigma));
    }
    if (size < 1 || size % 2 == 0) {
        throw ParamError("gaussian_kernel: size must be odd and positive, "
                         "got " + std::to_string(size));
    }
    GaussianKernel kernel;
    kernel.size = size;
    kernel.weights.resize(static_cast<std::size_t>(size) * size);
    const int h = size / 2;
    double sum = 0.0;
    for (int i = -h; i <= h; ++i) {
        for (int j = -h; j <= h; ++j) {
            const double w =
                std::exp(-(i * i + j * j) / (2.0 * sigma * sigma));
            kernel.weights[static_cast<std::size_t>(i + h) * size + (j + h)] =
                w;
            sum += w;
        }
    }
    for (double& w : kernel.weights) {
        w /= sum;
    }
    return kernel;
}

GrayImage build_blur_map(const DisparityMap& depth, const FocusSpec& focus,
                         int max_disparity) {
    if (focus.ranges.empty()) {
        throw ParamError("build_blur_map: no focus ranges given");
    }
    for (const auto& [lo, hi] : focus.ranges) {
        if (lo < 0 || lo > hi || hi > max_disparity) {
            throw ParamError("build_blur_map: bad focus range [" +
                             std::to_string(lo) + ", " + std::to_string(hi) +
                             "] for max disparity " +
                             std::to_string(max_disparity));
        }
    }
    GrayImage map(depth.width, depth.height);
    for (std::size_t i = 0; i < map.data.size(); ++i) {
        const std::int16_t d = depth.values[i];
        bool sharp = false;
        if (d >= 0) {
            for (const auto& [lo, hi] : focus.ranges) {
                if (d >= lo && d <= hi) {
                    sharp = true;
                    break;
                }
            }
        }
        map.data[i] = sharp ? 0 : 1;
    }
    return map;
}

RgbImage selective_blur(const RgbImage& image, const GrayImage& blur_map,
                        const GaussianKernel& kernel, int workers) {
    if (blur_map.width != image.width || blur_map.height != image.height) {
        throw ParamError("selective_blur: blur map " +
                         std::to_string(blur_map.width) + "x" +
                         std::to_string(blur_map.height) +
                         " does not match image " +
                         std::to_string(image.width) + "x" +
                         std::to_string(image.height));
    }
    RgbImage out = image;
    const int width = image.width;
    const int height = image.height;
    const int h = kernel.size / 2;
    parallel_for(height, workers, [&](std::int64_t row) {
        const int y = static_cast<int>(row);
        for (int x = 0; x < width; ++x) {
            if (blur_map.at(x, y) == 0) {
                continue; // in focus: original bytes pass through untouched
            }
            double acc[3] = {0.0, 0.0, 0.0};
            for (int i = -h; i <= h; ++i) {
                const int sy = std::clamp(y + i, 0, height - 1);
                for (int j = -h; j <= h; ++j) {
                    const int sx = std::clamp(x + j, 0, width - 1);
                    const double w = kernel.at(i, j);
                    acc[0] += w * image.at(sx, sy, 0);
                    acc[1] += w * image.at(sx, sy, 1);
                    acc[2] += w * image.at(sx, sy, 2);
                }
            }
            for (int c = 0; c < 3; ++c) {
                out.at(x, y, c) = static_cast<std::uint8_t>(
                    std::clamp(std::lround(acc[c]), 0L, 255L));
            }
        }
    });
    return out;
}

} // namespace stereotk
