#pragma once

#include <vector>

#include "stereotk/image.hpp"
#include "stereotk/stereo.hpp"

namespace stereotk {

// Square normalised Gaussian, row-major weights.
struct GaussianKernel {
    int size = 0;
    std::vector<double> weights; // size * size entries summing to 1

    double at(int i, int j) const { // offsets in [-size/2, size/2]
        const int h = size / 2;
        return weights[static_cast<std::size_t>(i + h) * size + (j + h)];
    }
};

// Disparity intervals that stay in focus, plus the blur strength applied
// everywhere else.
struct FocusSpec {
    std::vector<std::pair<int, int>> ranges; // inclusive [lo, hi] intervals
    double sigma = 2.0;
};

// Smallest odd size covering three standard deviations on each side.
int default_kernel_size(double sigma);

// Build a size x size Gaussian with the given sigma, normalised so the
// weights sum to exactly the accumulated total (sum == 1 up to rounding).
// Throws ParamError when sigma <= 0 or size is even or < 1.
GaussianKernel gaussian_kernel(double sigma, int size);

// Per-pixel blur decision: 0 (keep sharp) where the disparity is known and
// inside one of the focus ranges, 1 (blur) everywhere else — including
// pixels whose disparity is unknown.  Throws ParamError when `ranges` is
// empty or an interval is invalid (lo < 0, lo > hi, or hi > max_disparity).
GrayImage build_blur_map(const DisparityMap& depth, const FocusSpec& focus,
                         int max_disparity);

// Gaussian-blur `image` (replicated borders) and composite: pixels whose
// blur-map entry is 0 keep their original value byte for byte, the rest
// take the blurred value.  Throws ParamError when the map size differs
// from the image.  Every output pixel is computed independently, so the
// result is identical for any worker count.
RgbImage selective_blur(const RgbImage& image, const GrayImage& blur_map,
                        const GaussianKernel& kernel, int workers = 1);

} // namespace stereotk
