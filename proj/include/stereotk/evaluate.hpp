#pragma once

#include <cstdint>
#include <string>

#include "stereotk/stereo.hpp"

namespace stereotk {

// Result of comparing a computed disparity map against ground truth.
struct EvalResult {
    double bad_pixel_rate = 0.0; // bad / compared, 0 when nothing compared
    std::uint64_t compared = 0;  // pixels known in both maps
    std::uint64_t excluded = 0;  // pixels unknown on either side
    double delta_d = 0.0;        // error tolerance used
};

// Fraction of compared pixels whose |computed - truth| exceeds delta_d.
// Only pixels known in both maps are compared; the rest are counted as
// excluded.  Throws ParamError on mismatched sizes or delta_d < 0.
EvalResult bad_pixel_rate(const DisparityMap& computed,
                          const DisparityMap& truth, double delta_d,
                          int workers = 1);

// Load a ground-truth disparity image (PGM or grey PNG) whose pixel values
// are disparity * scale; value 0 means "not compared" and becomes unknown.
// Throws ParamError when scale <= 0.
DisparityMap load_ground_truth(const std::string& path, double scale);

// Dense winner-takes-all SAD over every pixel with a valid window — the
// classic full-frame baseline the sparse pipeline is measured against.
// Same matching rules as match_boundary_pixels, just without a mask.
DisparityMap dense_sad_baseline(const GrayImage& left, const GrayImage& right,
                                const MatchConfig& config, int workers = 1);

// Write a disparity map as a PGM holding round(d * output_scale), with the
// scale recorded in a header comment ("scale <value>") and unknown pixels
// stored as 0.  A sibling "<stem>.mask.pgm" records which pixels are known
// (255) so that a true disparity of 0 survives a round trip.  Throws
// ParamError when output_scale <= 0 or a scaled value would not fit a byte.
void save_disparity(const DisparityMap& map, const std::string& path,
                    double output_scale);

// Path of the known-pixel mask written next to a disparity file.
std::string disparity_mask_path(const std::string& path);

// Read back a disparity PGM.  The scale comes from the header comment when
// present, otherwise from `fallback_scale` (<= 0 means "no fallback": use
// 1).  If the sibling mask file exists it decides which pixels are known;
// otherwise value 0 is taken to mean unknown.
DisparityMap load_disparity(const std::string& path,
                            double fallback_scale = 0.0);

// One-line JSON evaluation report.
std::string eval_report_json(const EvalResult& result);

} // namespace stereotk
