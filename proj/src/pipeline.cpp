#include "stereotk/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <string>
#include <utility>

#include "stereotk/error.hpp"

namespace stereotk {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start)
        .count();
}

} // namespace

void validate_config(const PipelineConfig& config) {
    if (config.k < 1) {
        throw ParamError("pipeline: k must be at least 1, got " +
                         std::to_string(config.k));
    }
    if (config.window < 1 || config.window % 2 == 0) {
        throw ParamError("pipeline: window must be odd and positive, got " +
                         std::to_string(config.window));
    }
    if (config.max_disparity < 0) {
        throw ParamError("pipeline: max_disparity must be >= 0, got " +
                         std::to_string(config.max_disparity));
    }
    if (config.threshold < 0) {
        throw ParamError("pipeline: threshold must be >= 0, got " +
                         std::to_string(config.threshold));
    }
    if (!(config.prune_fraction >= 0.0 && config.prune_fraction < 1.0)) {
        throw ParamError("pipeline: prune_fraction must be in [0, 1), got " +
                         std::to_string(config.prune_fraction));
    }
    if (config.workers < 1) {
        throw ParamError("pipeline: workers must be at least 1, got " +
                         std::to_string(config.workers));
    }
}

DepthResult run_depth_pipeline(const RgbImage& left, const RgbImage& right,
                               const PipelineConfig& config,
                               StageTimes* times) {
    validate_config(config);
    if (!left.same_size(right)) {
        throw ParamError("pipeline: image sizes differ, left " +
                         std::to_string(left.width) + "x" +
                         std::to_string(left.height) + " vs right " +
                         std::to_string(right.width) + "x" +
                         std::to_string(right.height));
    }

    DepthResult result;
    const int workers = config.workers;

    auto start = Clock::now();
    result.left_lightness = rgb_to_lightness(left, workers);
    result.right_lightness = rgb_to_lightness(right, workers);
    if (times) {
        times->convert = ms_since(start);
    }

    start = Clock::now();
    const Histogram histogram = build_histogram(result.left_lightness, workers);
    // On a frame with fewer distinct lightness values than k, fall back to
    // one cluster per occupied bin instead of rejecting the frame.
    int occupied = 0;
    for (std::uint64_t c : histogram.counts) {
        occupied += c > 0;
    }
    const int k = std::min(config.k, occupied);
    result.clustering = kmeans_histogram(histogram, k);
    result.labels = assign_pixels(result.left_lightness, result.clustering);
    if (times) {
        times->segment = ms_since(start);
    }

    start = Clock::now();
    result.boundary_raw = detect_boundaries(result.labels, workers);
    BoundaryMask refined = morph_fill(result.boundary_raw, workers);
    refined = morph_remove(refined, workers);
    refined = prune_components(refined, config.prune_fraction);
    result.boundary_refined = refined;
    result.boundary_anchored =
        add_border_anchors(refined, config.window / 2);
    if (times) {
        times->boundary = ms_since(start);
    }

    start = Clock::now();
    const MatchConfig match{config.window, config.max_disparity};
    result.sparse = match_boundary_pixels(result.left_lightness,
                                          result.right_lightness,
                                          result.boundary_anchored, match,
                                          workers);
    if (times) {
        times->match = ms_since(start);
    }

    start = Clock::now();
    result.row_filled = fill_scanlines(result.sparse, workers);
    if (times) {
        times->fill = ms_since(start);
    }

    start = Clock::now();
    result.dense = peek_columns(result.row_filled, config.threshold, workers);
    if (times) {
        times->peek = ms_since(start);
    }

    DepthStats& stats = result.stats;
    stats.pixels = left.pixel_count();
    stats.boundary_raw = result.boundary_raw.count();
    stats.boundary_refined = result.boundary_refined.count();
    stats.matched = result.sparse.known_count();
    if (stats.pixels > 0) {
        stats.matched_fraction = static_cast<double>(stats.matched) /
                                 static_cast<double>(stats.pixels);
        stats.known_fraction =
            static_cast<double>(result.dense.known_count()) /
            static_cast<double>(stats.pixels);
    }
    return result;
}

RgbImage run_refocus_pipeline(const RgbImage& left, const RgbImage& right,
                              const PipelineConfig& config,
                              const FocusSpec& focus, int kernel_size,
                              DepthResult* depth_out) {
    DepthResult depth = run_depth_pipeline(left, right, config, nullptr);
    const GrayImage blur_map =
        build_blur_map(depth.dense, focus, config.max_disparity);
    const int size =
        kernel_size > 0 ? kernel_size : default_kernel_size(focus.sigma);
    const GaussianKernel kernel = gaussian_kernel(focus.sigma, size);
    RgbImage out = selective_blur(left, blur_map, kernel, config.workers);
    if (depth_out) {
        *depth_out = std::move(depth);
    }
    return out;
}

} // namespace stereotk
