#pragma once

#include <cstdint>
#include <string>

#include "stereotk/boundary.hpp"
#include "stereotk/image.hpp"
#include "stereotk/reconstruct.hpp"
#include "stereotk/refocus.hpp"
#include "stereotk/segmentation.hpp"
#include "stereotk/stereo.hpp"

namespace stereotk {

// Everything the depth pipeline needs to know.  Defaults follow the
// reference tuning for the Middlebury pairs: ten lightness clusters and a
// 9x9 matching window.
struct PipelineConfig {
    int k = 10;                  // lightness clusters
    int window = 9;              // SAD window side (odd)
    int max_disparity = 16;      // disparity search range [0, max]
    int threshold = 1;           // column-pass discontinuity threshold
    double prune_fraction = 0.04; // component-noise budget
    int workers = 1;             // threads for the parallel kernels
};

// Wall-clock milliseconds per pipeline stage.
struct StageTimes {
    double convert = 0.0;
    double segment = 0.0;
    double boundary = 0.0;
    double match = 0.0;
    double fill = 0.0;
    double peek = 0.0;

    double total() const {
        return convert + segment + boundary + match + fill + peek;
    }
};

// Pixel bookkeeping for one run, used for reporting and acceptance checks.
struct DepthStats {
    std::uint64_t pixels = 0;           // width * height
    std::uint64_t boundary_raw = 0;     // detected boundary pixels
    std::uint64_t boundary_refined = 0; // after fill/remove/prune
    std::uint64_t matched = 0;          // pixels given a disparity by SAD
    double matched_fraction = 0.0;      // matched / pixels
    double known_fraction = 0.0;        // known in final map / pixels
};

// All intermediate products of one depth run; kept around so tools can dump
// them for debugging and tests can inspect any stage.
struct DepthResult {
    GrayImage left_lightness;
    GrayImage right_lightness;
    Clustering clustering;
    LabelMap labels;
    BoundaryMask boundary_raw;
    BoundaryMask boundary_refined; // after fill, remove and prune
    BoundaryMask boundary_anchored;
    DisparityMap sparse;
    DisparityMap row_filled;
    DisparityMap dense;
    DepthStats stats;
};

// A rectified stereo frame.
struct StereoPair {
    RgbImage left;
    RgbImage right;
};

// Run the full depth pipeline: lightness conversion, histogram K-Means
// segmentation, boundary detection and refinement, boundary-only SAD
// matching, then the horizontal and vertical propagation passes.  If
// `times` is non-null each stage's wall-clock duration is recorded.
// Throws ParamError on mismatched image sizes or invalid configuration.
DepthResult run_depth_pipeline(const RgbImage& left, const RgbImage& right,
                               const PipelineConfig& config,
                               StageTimes* times = nullptr);

// Depth pipeline followed by selective blurring of the left image: pixels
// whose disparity falls in a focus range keep their original bytes, the
// rest are Gaussian-blurred.  `kernel_size` <= 0 picks the default size
// for the requested sigma.
RgbImage run_refocus_pipeline(const RgbImage& left, const RgbImage& right,
                              const PipelineConfig& config,
                              const FocusSpec& focus, int kernel_size = 0,
                              DepthResult* depth_out = nullptr);

void validate_config(const PipelineConfig& config);

} // namespace stereotk
