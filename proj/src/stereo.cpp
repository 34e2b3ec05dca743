#include "stereotk/stereo.hpp"

#include <cstdlib>
#include <limits>
#include <string>

#include "stereotk/error.hpp"
#include "stereotk/parallel.hpp"

namespace stereotk {

std::uint32_t sad_cost(const GrayImage& left, const GrayImage& right, int x,
                       int y, int d, int window) {
    const int h = window / 2;
    std::uint32_t sum = 0;
    for (int dy = -h; dy <= h; ++dy) {
        const std::uint8_t* l =
            left.data.data() + static_cast<std::size_t>(y + dy) * left.width +
            (x - h);
        const std::uint8_t* r =
            right.data.data() +
            static_cast<std::size_t>(y + dy) * right.width + (x - d - h);
        for (int i = 0; i < window; ++i) {
            sum += static_cast<std::uint32_t>(std::abs(l[i] - r[i]));
        }
    }
    return sum;
}

namespace {

void validate_match_inputs(const GrayImage& left, const GrayImage& right,
                           const BoundaryMask* mask,
                           const MatchConfig& config) {
    if (left.width != right.width || left.height != right.height) {
        throw ParamError("stereo: image sizes differ, left " +
                         std::to_string(left.width) + "x" +
                         std::to_string(left.height) + " vs right " +
                         std::to_string(right.width) + "x" +
                         std::to_string(right.height));
    }
    if (mask != nullptr &&
        (mask->width != left.width || mask->height != left.height)) {
        throw ParamError("stereo: mask size " + std::to_string(mask->width) +
                         "x" + std::to_string(mask->height) +
                         " does not match images " +
                         std::to_string(left.width) + "x" +
                         std::to_string(left.height));
    }
    if (config.window < 1 || config.window % 2 == 0) {
        throw ParamError("stereo: window must be odd and positive, got " +
                         std::to_string(config.window));
    }
    if (config.max_disparity < 0) {
        throw ParamError("stereo: max_disparity must be >= 0, got " +
                         std::to_string(config.max_disparity));
    }
}

} // namespace

DisparityMap match_boundary_pixels(const GrayImage& left,
                                   const GrayImage& right,
                                   const BoundaryMask& mask,
                                   const MatchConfig& config, int workers) {
    validate_match_inputs(left, right, &mask, config);

    DisparityMap out(left.width, left.height);
    const int h = config.window / 2;
    const int width = left.width;
    const int height = left.height;
    if (width < config.window || height < config.window) {
        return out; // no window fits anywhere
    }
    // Boundary pixels cluster in bursts of rows; round-robin row chunking
    // spreads that skew across workers while staying fully deterministic.
    parallel_for(height, ExecPlan{workers, 1}, [&](std::int64_t row) {
        const int y = static_cast<int>(row);
        if (y < h || y >= height - h) {
            return;
        }
        for (int x = h; x < width - h; ++x) {
            if (mask.at(x, y) == 0) {
                continue;
            }
            // Keep the right window inside the frame: d <= x - h.
            const int d_limit = std::min(config.max_disparity, x - h);
            std::uint32_t best_cost = std::numeric_limits<std::uint32_t>::max();
            int best_d = 0;
            for (int d = 0; d <= d_limit; ++d) {
                const std::uint32_t cost = sad_cost(left, right, x, y, d,
                                                    config.window);
                if (cost < best_cost) { // strict: ties keep the smaller d
                    best_cost = cost;
                    best_d = d;
                }
            }
            out.at(x, y) = static_cast<std::int16_t>(best_d);
        }
    });
    return out;
}

} // namespace stereotk
