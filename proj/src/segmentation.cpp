#include "stereotk/segmentation.hpp"

#include <cmath>
#include <cstdlib>

#include "stereotk/error.hpp"
#include "stereotk/parallel.hpp"

namespace stereotk {

Histogram build_histogram(const GrayImage& image, int workers) {
    if (workers <= 1 || image.height <= 1) {
        Histogram histogram;
        for (std::uint8_t v : image.data) {
            ++histogram.counts[v];
        }
        return histogram;
    }
    // One partial histogram per row block; summing them afterwards is
    // order-independent, so any partitioning gives the same counts.
    const int blocks = std::min(workers, image.height);
    std::vector<Histogram> partial(blocks);
    const int width = image.width;
    const int height = image.height;
    parallel_for(blocks, workers, [&](std::int64_t b) {
        const int row_begin = static_cast<int>(b * height / blocks);
        const int row_end = static_cast<int>((b + 1) * height / blocks);
        Histogram& h = partial[b];
        for (int y = row_begin; y < row_end; ++y) {
            const std::uint8_t* row =
                image.data.data() + static_cast<std::size_t>(y) * width;
            for (int x = 0; x < width; ++x) {
                ++h.counts[row[x]];
            }
        }
    });
    Histogram histogram;
    for (const Histogram& h : partial) {
        for (int v = 0; v < 256; ++v) {
            histogram.counts[v] += h.counts[v];
        }
    }
    return histogram;
}

namespace {

// Nearest center for `value`; ties go to the lowest center index.
int nearest_center(const std::vector<double>& centers, double value) {
    int best = 0;
    double best_distance = std::abs(value - centers[0]);
    for (int j = 1; j < static_cast<int>(centers.size()); ++j) {
        const double distance = std::abs(value - centers[j]);
        if (distance < best_distance) {
            best_distance = distance;
            best = j;
        }
    }
    return best;
}

} // namespace

Clustering kmeans_histogram(const Histogram& histogram, int k, int max_iter,
                            double tol) {
    if (k < 1) {
        throw ParamError("kmeans: k must be at least 1, got " +
                         std::to_string(k));
    }
    if (max_iter < 1) {
        throw ParamError("kmeans: max_iter must be at least 1, got " +
                         std::to_string(max_iter));
    }
    int lo = -1;
    int hi = -1;
    int occupied = 0;
    for (int v = 0; v < 256; ++v) {
        if (histogram.counts[v] > 0) {
            if (lo < 0) {
                lo = v;
            }
            hi = v;
            ++occupied;
        }
    }
    if (occupied == 0) {
        throw ParamError("kmeans: empty histogram");
    }
    if (k > occupied) {
        throw ParamError("kmeans: k=" + std::to_string(k) + " exceeds the " +
                         std::to_string(occupied) + " occupied bins");
    }

    Clustering clustering;
    clustering.centers.resize(k);
    if (k == 1) {
        clustering.centers[0] = (lo + hi) / 2.0;
    } else {
        for (int j = 0; j < k; ++j) {
            clustering.centers[j] = lo + (hi - lo) * (j / (k - 1.0));
        }
    }

    std::array<int, 256> assignment{};
    for (int iter = 1; iter <= max_iter; ++iter) {
        for (int v = 0; v < 256; ++v) {
            assignment[v] = nearest_center(clustering.centers, v);
        }
        // Count-weighted means: the sums stay integral, so the division is
        // the only floating-point step and matches a per-pixel K-Means run
        // bit for bit.
        std::vector<std::uint64_t> weight(k, 0);
        std::vector<std::uint64_t> value_sum(k, 0);
        for (int v = 0; v < 256; ++v) {
            if (histogram.counts[v] == 0) {
                continue;
            }
            weight[assignment[v]] += histogram.counts[v];
            value_sum[assignment[v]] += histogram.counts[v] * v;
        }
        double movement = 0.0;
        for (int j = 0; j < k; ++j) {
            if (weight[j] == 0) {
                continue; // empty cluster keeps its previous center
            }
            const double updated = static_cast<double>(value_sum[j]) /
                                   static_cast<double>(weight[j]);
            movement = std::max(movement,
                                std::abs(updated - clustering.centers[j]));
            clustering.centers[j] = updated;
        }
        clustering.iterations_run = iter;
        if (movement < tol) {
            break;
        }
    }

    // Final pass so the published table is consistent with the final centers.
    for (int v = 0; v < 256; ++v) {
        clustering.bin_assignment[v] = static_cast<std::uint16_t>(
            nearest_center(clustering.centers, v));
    }
    return clustering;
}

LabelMap assign_pixels(const GrayImage& image, const Clustering& clustering) {
    if (clustering.centers.empty()) {
        throw ParamError("assign_pixels: clustering has no centers");
    }
    LabelMap labels(image.width, image.height);
    for (std::size_t i = 0; i < image.data.size(); ++i) {
        labels.labels[i] = clustering.bin_assignment[image.data[i]];
    }
    return labels;
}

} // namespace stereotk
