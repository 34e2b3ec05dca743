#include "stereotk/reconstruct.hpp"

#include <string>
#include <vector>

#include "stereotk/error.hpp"
#include "stereotk/parallel.hpp"

namespace stereotk {

DisparityMap fill_scanlines(const DisparityMap& sparse, int workers) {
    DisparityMap out = sparse;
    const int width = sparse.width;
    parallel_for(sparse.height, workers, [&](std::int64_t row) {
        const int y = static_cast<int>(row);
        int prev_x = -1;
        std::int16_t prev_d = DisparityMap::kUnknown;
        for (int x = 0; x < width; ++x) {
            const std::int16_t d = sparse.at(x, y);
            if (d < 0) {
                continue;
            }
            if (prev_x >= 0 && d == prev_d) {
                for (int f = prev_x + 1; f < x; ++f) {
                    out.at(f, y) = d;
                }
            }
            prev_x = x;
            prev_d = d;
        }
    });
    return out;
}

namespace {

// Estimate from the two nearest known disparities: past a discontinuity
// (range over threshold) prefer the smaller, i.e. more distant, surface;
// otherwise average, halves rounding down.
std::int16_t peek_estimate(std::int16_t a, std::int16_t b, int threshold) {
    const int range = a >= b ? a - b : b - a;
    if (range > threshold) {
        return a < b ? a : b;
    }
    return static_cast<std::int16_t>((a + b) / 2);
}

} // namespace

DisparityMap peek_columns(const DisparityMap& map, int threshold,
                          int workers) {
    if (threshold < 0) {
        throw ParamError("peek_columns: threshold must be >= 0, got " +
                         std::to_string(threshold));
    }
    DisparityMap out = map;
    const int height = map.height;
    parallel_for(map.width, workers, [&](std::int64_t col) {
        const int x = static_cast<int>(col);

        // All known entries of this column, in row order (the snapshot the
        // whole pass reads; pixels assigned here never feed later ones).
        std::vector<int> rows;
        std::vector<std::int16_t> disps;
        for (int y = 0; y < height; ++y) {
            const std::int16_t d = map.at(x, y);
            if (d >= 0) {
                rows.push_back(y);
                disps.push_back(d);
            }
        }
        if (rows.empty()) {
            return; // nothing to propagate from
        }
        if (rows.size() == 1) {
            for (int y = 0; y < height; ++y) {
                if (map.at(x, y) < 0) {
                    out.at(x, y) = disps[0];
                }
            }
            return;
        }

        // `next` indexes the first known entry strictly below row y.  The
        // usual pair is one neighbour above and one below; when the pixel
        // sits above (or below) every known entry, the two nearest on that
        // side stand in.
        std::size_t next = 0;
        const std::size_t n = rows.size();
        for (int y = 0; y < height; ++y) {
            while (next < n && rows[next] <= y) {
                ++next;
            }
            if (map.at(x, y) >= 0) {
                continue;
            }
            std::size_t lo;
            if (next == 0) {
                lo = 0;
            } else if (next == n) {
                lo = n - 2;
            } else {
                lo = next - 1;
            }
            out.at(x, y) = peek_estimate(disps[lo], disps[lo + 1], threshold);
        }
    });
    return out;
}

} // namespace stereotk
