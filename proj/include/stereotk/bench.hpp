#pragma once

#include <string>
#include <vector>

#include "stereotk/parallel.hpp"
#include "stereotk/pipeline.hpp"

namespace stereotk {

// Timing summary for one worker count over a batch of frames.
struct BenchReport {
    int workers = 0;
    int frames = 0;
    StageTimes times;  // accumulated over all frames at this worker count
    StageTimes serial; // the workers=1 baseline, for per-stage speed-ups
    double speedup = 0.0; // serial.total() / times.total()
};

// Run the depth pipeline over `frames` once per requested worker count and
// measure per-stage wall-clock time.  The serial plan (workers = 1) is
// mandatory and always measured first so every other plan can report its
// speed-up against it; each plan gets one untimed warm-up run on the first
// frame.  Throws ParamError when `frames` is empty, `worker_counts` is
// empty, or no serial plan is requested.
std::vector<BenchReport> run_benchmark(const std::vector<StereoPair>& frames,
                                       const std::vector<int>& worker_counts,
                                       const PipelineConfig& config);

// Render reports as CSV: one row per worker count and stage plus a total
// row, with serial and measured milliseconds and the resulting speed-up.
std::string benchmark_csv(const std::vector<BenchReport>& reports);

} // namespace stereotk
