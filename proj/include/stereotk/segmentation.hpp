#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stereotk/image.hpp"

namespace stereotk {

// Occurrence counts of the 256 possible lightness values.
struct Histogram {
    std::array<std::uint64_t, 256> counts{};

    std::uint64_t total() const {
        std::uint64_t sum = 0;
        for (std::uint64_t c : counts) {
            sum += c;
        }
        return sum;
    }
};

// Result of clustering a histogram: final centers plus the cluster index
// every bin value maps to.  Because cluster membership depends only on the
// pixel value, this table is all that is needed to label an image.
struct Clustering {
    std::vector<double> centers;
    std::array<std::uint16_t, 256> bin_assignment{};
    int iterations_run = 0;

    int k() const { return static_cast<int>(centers.size()); }
};

// Per-pixel cluster indices for an image.
struct LabelMap {
    int width = 0;
    int height = 0;
    std::vector<std::uint16_t> labels;

    LabelMap() = default;
    LabelMap(int w, int h)
        : width(w), height(h), labels(static_cast<std::size_t>(w) * h, 0) {}

    std::uint16_t& at(int x, int y) {
        return labels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint16_t at(int x, int y) const {
        return labels[static_cast<std::size_t>(y) * width + x];
    }
};

// Count value occurrences over the whole image.  With several workers each
// one histograms a block of rows and the partial counts are summed, which
// yields the identical result as the serial loop.
Histogram build_histogram(const GrayImage& image, int workers = 1);

// Lloyd iterations over histogram bins instead of pixels.  Initial centers
// are spread evenly across the occupied value range; each iteration assigns
// every bin to its nearest center (ties to the lowest index) and moves each
// center to the count-weighted mean of its bins.  Iteration stops when no
// center moved by `tol` or more, or after `max_iter` rounds.  Clustering a
// histogram this way is exactly equivalent to running K-Means on the raw
// pixel values, a few hundred entries at a time instead of the whole frame.
// Throws ParamError when k < 1, k exceeds the number of occupied bins,
// max_iter < 1, or the histogram is empty.
Clustering kmeans_histogram(const Histogram& histogram, int k,
                            int max_iter = 100, double tol = 0.5);

// Label every pixel with the cluster of its value via the bin table.
// Throws ParamError if the clustering has no centers.
LabelMap assign_pixels(const GrayImage& image, const Clustering& clustering);

} // namespace stereotk
