#include "stereotk/bench.hpp"

#include <algorithm>
#include <sstream>
#include <string>

#include "stereotk/error.hpp"

namespace stereotk {

namespace {

StageTimes measure_batch(const std::vector<StereoPair>& frames,
                         const PipelineConfig& config) {
    // Warm-up: touch every code path once so allocator and thread-pool
    // start-up costs do not land in the first timed frame.
    StageTimes scratch;
    run_depth_pipeline(frames.front().left, frames.front().right, config,
                       &scratch);

    StageTimes total;
    for (const StereoPair& frame : frames) {
        StageTimes t;
        run_depth_pipeline(frame.left, frame.right, config, &t);
        total.convert += t.convert;
        total.segment += t.segment;
        total.boundary += t.boundary;
        total.match += t.match;
        total.fill += t.fill;
        total.peek += t.peek;
    }
    return total;
}

void append_row(std::ostringstream& out, int frames, int workers,
                const char* stage, double serial_ms, double parallel_ms) {
    out << frames << ',' << workers << ',' << stage << ',' << serial_ms << ','
        << parallel_ms << ','
        << (parallel_ms > 0.0 ? serial_ms / parallel_ms : 0.0) << '\n';
}

} // namespace

std::vector<BenchReport> run_benchmark(const std::vector<StereoPair>& frames,
                                       const std::vector<int>& worker_counts,
                                       const PipelineConfig& config) {
    if (frames.empty()) {
        throw ParamError("benchmark: no frames given");
    }
    if (worker_counts.empty()) {
        throw ParamError("benchmark: no worker counts given");
    }
    if (std::find(worker_counts.begin(), worker_counts.end(), 1) ==
        worker_counts.end()) {
        throw ParamError("benchmark: worker counts must include 1, the "
                         "serial baseline");
    }
    for (int w : worker_counts) {
        if (w < 1) {
            throw ParamError("benchmark: worker count must be >= 1, got " +
                             std::to_string(w));
        }
    }

    // Serial baseline first; everything else is measured relative to it.
    PipelineConfig serial_config = config;
    serial_config.workers = 1;
    const StageTimes serial = measure_batch(frames, serial_config);

    std::vector<BenchReport> reports;
    for (int workers : worker_counts) {
        BenchReport report;
        report.workers = workers;
        report.frames = static_cast<int>(frames.size());
        report.serial = serial;
        if (workers == 1) {
            report.times = serial;
        } else {
            PipelineConfig run_config = config;
            run_config.workers = workers;
            report.times = measure_batch(frames, run_config);
        }
        report.speedup = report.times.total() > 0.0
                             ? serial.total() / report.times.total()
                             : 0.0;
        reports.push_back(report);
    }
    return reports;
}

std::string benchmark_csv(const std::vector<BenchReport>& reports) {
    std::ostringstream out;
    out << "frames,workers,stage,serial_ms,parallel_ms,speedup\n";
    for (const BenchReport& report : reports) {
        const int f = report.frames;
        const int w = report.workers;
        const StageTimes& s = report.serial;
        const StageTimes& t = report.times;
        append_row(out, f, w, "convert", s.convert, t.convert);
        append_row(out, f, w, "segment", s.segment, t.segment);
        append_row(out, f, w, "boundary", s.boundary, t.boundary);
        append_row(out, f, w, "match", s.match, t.match);
        append_row(out, f, w, "fill", s.fill, t.fill);
        append_row(out, f, w, "peek", s.peek, t.peek);
        append_row(out, f, w, "total", s.total(), t.total());
    }
    return out.str();
}

} // namespace stereotk
