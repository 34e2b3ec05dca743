#pragma once

#include <cstdint>
#include <vector>

#include "stereotk/segmentation.hpp"

namespace stereotk {

// Binary per-pixel mask (0 or 1), row-major.
struct BoundaryMask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> mask;

    BoundaryMask() = default;
    BoundaryMask(int w, int h)
        : width(w), height(h), mask(static_cast<std::size_t>(w) * h, 0) {}

    std::uint8_t& at(int x, int y) {
        return mask[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t at(int x, int y) const {
        return mask[static_cast<std::size_t>(y) * width + x];
    }
    std::uint64_t count() const {
        std::uint64_t n = 0;
        for (std::uint8_t v : mask) {
            n += v;
        }
        return n;
    }
};

// Connected components of the set pixels of a mask, 8-connected.  Labels
// are dense, assigned in the order components are first met in a raster
// scan; `labels` holds -1 on unset pixels.  `by_size` lists the component
// ids sorted by ascending size, ties broken by the smaller label.
struct ComponentTable {
    int width = 0;
    int height = 0;
    std::vector<std::int32_t> labels;
    std::vector<std::uint32_t> sizes;
    std::vector<std::int32_t> by_size;
};

// Mark every pixel whose label differs from at least one 8-neighbour.
// Neighbours outside the image are ignored, so a frame of one uniform
// segment produces an empty mask.  Rows are independent; the result does
// not depend on the worker count.
BoundaryMask detect_boundaries(const LabelMap& labels, int workers = 1);

// One simultaneous pass of hole filling: a 0 pixel becomes 1 when all
// eight of its neighbours exist and are 1.  All decisions read the input
// mask, never the output being built.
BoundaryMask morph_fill(const BoundaryMask& mask, int workers = 1);

// One simultaneous pass of interior thinning: a 1 pixel becomes 0 when all
// four of its 4-neighbours exist and are 1.  Boundary outlines (thin lines)
// survive; filled blobs lose their interior.
BoundaryMask morph_remove(const BoundaryMask& mask, int workers = 1);

// Label the 8-connected components of the set pixels.
ComponentTable label_components(const BoundaryMask& mask);

// Drop the smallest components (noise specks) while the pixels removed so
// far stay within `fraction` of the set-pixel total; the first component
// that would overshoot the budget stops the removal.  Throws ParamError
// unless 0 <= fraction < 1.
BoundaryMask prune_components(const BoundaryMask& mask, double fraction);

// Set two full-height anchor columns at x = margin and x = width-1-margin,
// restricted to rows [margin, height-1-margin].  They guarantee that every
// scanline has matched pixels near both ends, which the reconstruction
// passes rely on.  Throws ParamError when margin < 0 or 2*margin >= width.
BoundaryMask add_border_anchors(const BoundaryMask& mask, int margin);

} // namespace stereotk
