#pragma once

#include "stereotk/stereo.hpp"

namespace stereotk {

// Horizontal propagation pass: within each row, every run of unknown
// pixels enclosed by two consecutive known pixels of equal disparity is
// filled with that disparity.  Runs whose enclosing anchors disagree are
// left untouched for the vertical pass.  Known pixels are never modified.
// Rows are independent, so the result is identical for any worker count.
DisparityMap fill_scanlines(const DisparityMap& sparse, int workers = 1);

// Vertical propagation pass: for every pixel still unknown, look up the
// nearest known disparities above and below in the same column of the
// *input* map (a snapshot; freshly filled pixels never act as anchors).
// When the two candidates differ by more than `threshold` the pixel is
// assumed to sit past a depth discontinuity and takes the smaller (more
// distant) value; otherwise it takes their mean with halves rounded down.
// Pixels above or below every known in their column combine the two
// nearest knowns in that one direction the same way; a column with a
// single known copies it, and an all-unknown column stays unknown.  Known
// pixels are never modified.  Throws ParamError when threshold < 0.
DisparityMap peek_columns(const DisparityMap& map, int threshold,
                          int workers = 1);

} // namespace stereotk
