#pragma once

#include <cstdint>
#include <vector>

#include "stereotk/boundary.hpp"
#include "stereotk/image.hpp"

namespace stereotk {

// Per-pixel integer disparity.  kUnknown marks pixels that have not been
// matched (or filled in) yet; valid disparities are >= 0.
struct DisparityMap {
    static constexpr std::int16_t kUnknown = -1;

    int width = 0;
    int height = 0;
    std::vector<std::int16_t> values;

    DisparityMap() = default;
    DisparityMap(int w, int h)
        : width(w), height(h),
          values(static_cast<std::size_t>(w) * h, kUnknown) {}

    std::int16_t& at(int x, int y) {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    std::int16_t at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
    bool known(int x, int y) const { return at(x, y) >= 0; }

    std::uint64_t known_count() const {
        std::uint64_t n = 0;
        for (std::int16_t v : values) {
            n += v >= 0;
        }
        return n;
    }
};

struct MatchConfig {
    int window = 9;      // odd SAD window side
    int max_disparity = 16;
};

// Sum of absolute differences between the window centred on (x, y) in the
// left image and the window centred on (x - d, y) in the right image.
// Both windows must lie fully inside their images; callers are expected to
// have filtered coordinates already, this routine does not re-check.
std::uint32_t sad_cost(const GrayImage& left, const GrayImage& right, int x,
                       int y, int d, int window);

// Winner-takes-all block matching restricted to the set pixels of `mask`.
// For each candidate the disparity range is [0, min(max_disparity, x - h)]
// with h the half window, so the right window never leaves the image; ties
// keep the smallest disparity.  Pixels whose left window would cross the
// image edge are skipped.  Unmatched pixels stay kUnknown.  Throws
// ParamError on mismatched image/mask sizes, an even or non-positive
// window, or a negative disparity range.
DisparityMap match_boundary_pixels(const GrayImage& left,
                                   const GrayImage& right,
                                   const BoundaryMask& mask,
                                   const MatchConfig& config,
                                   int workers = 1);

} // namespace stereotk
