// Command-line front end: depth estimation, selective refocus, disparity
// evaluation and the serial-vs-parallel benchmark.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stereotk/bench.hpp"
#include "stereotk/error.hpp"
#include "stereotk/evaluate.hpp"
#include "stereotk/image.hpp"
#include "stereotk/pipeline.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stereotk;

namespace {

// One config-file key bound to the CLI option that can override it.
struct ConfigBinding {
    const char* key;
    CLI::Option* option;
    std::function<void(const json&)> apply;
};

// Precedence is flags > config file > defaults: a key from the file is
// applied only when its flag was not given on the command line.
void apply_config_file(const std::string& path,
                       const std::vector<ConfigBinding>& bindings) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config " + path);
    }
    json doc;
    try {
        in >> doc;
    } catch (const json::parse_error& e) {
        throw FormatError(path + ": " + e.what());
    }
    if (!doc.is_object()) {
        throw FormatError(path + ": config must be a JSON object");
    }
    for (const auto& [key, value] : doc.items()) {
        const ConfigBinding* binding = nullptr;
        for (const ConfigBinding& b : bindings) {
            if (key == b.key) {
                binding = &b;
                break;
            }
        }
        if (binding == nullptr) {
            throw ParamError("config " + path + ": unknown key '" + key + "'");
        }
        if (binding->option->count() > 0) {
            continue;
        }
        try {
            binding->apply(value);
        } catch (const json::exception& e) {
            throw FormatError(path + ": key '" + key + "': " + e.what());
        }
    }
}

// Pipeline flags shared by the depth, refocus and bench subcommands.
struct PipelineFlags {
    PipelineConfig config;
    std::string config_path;
    CLI::Option* k = nullptr;
    CLI::Option* window = nullptr;
    CLI::Option* max_disparity = nullptr;
    CLI::Option* threshold = nullptr;
    CLI::Option* prune_fraction = nullptr;
    CLI::Option* workers = nullptr;
    CLI::Option* config_opt = nullptr;

    // The bench subcommand repurposes --workers for its list of worker
    // counts, so there the per-run thread count hides behind another name.
    void add(CLI::App* cmd, bool with_workers = true) {
        k = cmd->add_option("--k", config.k, "Lightness clusters");
        window = cmd->add_option("--window", config.window,
                                 "SAD window side (odd)");
        max_disparity = cmd->add_option("--max-disparity",
                                        config.max_disparity,
                                        "Largest disparity searched");
        threshold = cmd->add_option("--threshold", config.threshold,
                                    "Column-pass discontinuity threshold");
        prune_fraction = cmd->add_option("--prune-fraction",
                                         config.prune_fraction,
                                         "Boundary noise budget in [0, 1)");
        workers = cmd->add_option(with_workers ? "--workers"
                                               : "--pipeline-workers",
                                  config.workers,
                                  "Threads for the parallel kernels");
        config_opt = cmd->add_option("--config", config_path,
                                     "JSON config file (flags win)");
    }

    std::vector<ConfigBinding> bindings() {
        return {
            {"k", k, [this](const json& v) { config.k = v.get<int>(); }},
            {"window", window,
             [this](const json& v) { config.window = v.get<int>(); }},
            {"max_disparity", max_disparity,
             [this](const json& v) { config.max_disparity = v.get<int>(); }},
            {"threshold", threshold,
             [this](const json& v) { config.threshold = v.get<int>(); }},
            {"prune_fraction", prune_fraction,
             [this](const json& v) { config.prune_fraction = v.get<double>(); }},
            {"workers", workers,
             [this](const json& v) { config.workers = v.get<int>(); }},
        };
    }
};

GrayImage mask_to_gray(const BoundaryMask& mask) {
    GrayImage out(mask.width, mask.height);
    for (std::size_t i = 0; i < out.data.size(); ++i) {
        out.data[i] = mask.mask[i] ? 255 : 0;
    }
    return out;
}

// Dump every intermediate product of a depth run for inspection.
void dump_depth_debug(const DepthResult& result, double scale,
                      const std::string& dir) {
    fs::create_directories(dir);
    save_gray(result.left_lightness, dir + "/lightness_left.pgm");
    save_gray(result.right_lightness, dir + "/lightness_right.pgm");

    GrayImage labels(result.labels.width, result.labels.height);
    const int k = result.clustering.k();
    for (std::size_t i = 0; i < labels.data.size(); ++i) {
        labels.data[i] = static_cast<std::uint8_t>(
            k > 1 ? std::lround(result.labels.labels[i] * 255.0 / (k - 1))
                  : 0);
    }
    save_gray(labels, dir + "/labels.pgm");

    save_gray(mask_to_gray(result.boundary_raw), dir + "/boundary_raw.pgm");
    save_gray(mask_to_gray(result.boundary_refined),
              dir + "/boundary_refined.pgm");
    save_gray(mask_to_gray(result.boundary_anchored),
              dir + "/boundary_anchored.pgm");
    save_disparity(result.sparse, dir + "/sparse.pgm", scale);
    save_disparity(result.row_filled, dir + "/row_filled.pgm", scale);
    save_disparity(result.dense, dir + "/dense.pgm", scale);
}

json stats_json(const DepthResult& result, const StageTimes& times) {
    json out;
    out["width"] = result.dense.width;
    out["height"] = result.dense.height;
    out["boundary_raw"] = result.stats.boundary_raw;
    out["boundary_refined"] = result.stats.boundary_refined;
    out["matched"] = result.stats.matched;
    out["matched_fraction"] = result.stats.matched_fraction;
    out["known_fraction"] = result.stats.known_fraction;
    out["iterations"] = result.clustering.iterations_run;
    json stage;
    stage["convert"] = times.convert;
    stage["segment"] = times.segment;
    stage["boundary"] = times.boundary;
    stage["match"] = times.match;
    stage["fill"] = times.fill;
    stage["peek"] = times.peek;
    stage["total"] = times.total();
    out["times_ms"] = stage;
    return out;
}

// Parse "lo:hi[,lo:hi...]" into inclusive focus ranges.
std::vector<std::pair<int, int>> parse_focus(const std::string& text) {
    std::vector<std::pair<int, int>> ranges;
    std::stringstream stream(text);
    std::string part;
    while (std::getline(stream, part, ',')) {
        const std::size_t colon = part.find(':');
        if (colon == std::string::npos) {
            throw ParamError("focus range '" + part +
                             "' is not of the form lo:hi");
        }
        int lo = 0;
        int hi = 0;
        try {
            std::size_t used = 0;
            lo = std::stoi(part.substr(0, colon), &used);
            if (used != colon) {
                throw std::invalid_argument(part);
            }
            const std::string rest = part.substr(colon + 1);
            hi = std::stoi(rest, &used);
            if (used != rest.size()) {
                throw std::invalid_argument(part);
            }
        } catch (const std::exception&) {
            throw ParamError("focus range '" + part +
                             "' is not of the form lo:hi");
        }
        if (lo < 0 || lo > hi) {
            throw ParamError("focus range '" + part + "' is empty or "
                             "negative");
        }
        ranges.emplace_back(lo, hi);
    }
    if (ranges.empty()) {
        throw ParamError("no focus ranges given");
    }
    return ranges;
}

std::vector<int> parse_worker_list(const std::string& text) {
    std::vector<int> workers;
    std::stringstream stream(text);
    std::string part;
    while (std::getline(stream, part, ',')) {
        try {
            std::size_t used = 0;
            const int w = std::stoi(part, &used);
            if (used != part.size()) {
                throw std::invalid_argument(part);
            }
            workers.push_back(w);
        } catch (const std::exception&) {
            throw ParamError("worker list entry '" + part +
                             "' is not an integer");
        }
    }
    if (workers.empty()) {
        throw ParamError("empty worker list");
    }
    return workers;
}

// Find `<stem>_L.<ext>` / `<stem>_R.<ext>` pairs in a directory, sorted by
// stem so runs are reproducible.
std::vector<StereoPair> load_frames(const std::string& dir) {
    if (!fs::is_directory(dir)) {
        throw IoError("not a directory: " + dir);
    }
    static const char* kExtensions[] = {".png", ".ppm", ".pgm"};
    std::map<std::string, std::pair<fs::path, fs::path>> found;
    for (const fs::directory_entry& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) {
            continue;
        }
        const std::string name = entry.path().filename().string();
        for (const char* ext : kExtensions) {
            const std::string suffix = std::string("_L") + ext;
            if (name.size() <= suffix.size() ||
                name.compare(name.size() - suffix.size(), suffix.size(),
                             suffix) != 0) {
                continue;
            }
            const std::string stem =
                name.substr(0, name.size() - suffix.size());
            const fs::path right =
                entry.path().parent_path() / (stem + "_R" + ext);
            if (fs::exists(right)) {
                found[stem] = {entry.path(), right};
            }
        }
    }
    if (found.empty()) {
        throw ParamError("no *_L/_R frame pairs found in " + dir);
    }
    std::vector<StereoPair> frames;
    frames.reserve(found.size());
    for (const auto& [stem, paths] : found) {
        frames.push_back({load_image(paths.first.string()),
                          load_image(paths.second.string())});
    }
    return frames;
}

struct DepthOpts {
    std::string left, right, out, debug_dir;
    double scale = 8.0;
    PipelineFlags pipeline;
    CLI::Option* scale_opt = nullptr;
};

int run_depth(DepthOpts& opts) {
    if (!opts.pipeline.config_path.empty()) {
        auto bindings = opts.pipeline.bindings();
        bindings.push_back({"scale", opts.scale_opt, [&](const json& v) {
                                opts.scale = v.get<double>();
                            }});
        apply_config_file(opts.pipeline.config_path, bindings);
    }
    if (!(opts.scale > 0.0)) {
        throw ParamError("scale must be positive, got " +
                         std::to_string(opts.scale));
    }
    const RgbImage left = load_image(opts.left);
    const RgbImage right = load_image(opts.right);
    StageTimes times;
    const DepthResult result =
        run_depth_pipeline(left, right, opts.pipeline.config, &times);
    save_disparity(result.dense, opts.out, opts.scale);
    if (!opts.debug_dir.empty()) {
        dump_depth_debug(result, opts.scale, opts.debug_dir);
    }
    std::cout << stats_json(result, times).dump() << "\n";
    return 0;
}

struct RefocusOpts {
    std::string left, right, out, focus_text, debug_dir;
    double sigma = 2.0;
    int kernel_size = 0; // 0 = derived from sigma
    PipelineFlags pipeline;
    CLI::Option* sigma_opt = nullptr;
    CLI::Option* kernel_opt = nullptr;
};

int run_refocus(RefocusOpts& opts) {
    if (!opts.pipeline.config_path.empty()) {
        auto bindings = opts.pipeline.bindings();
        bindings.push_back({"sigma", opts.sigma_opt, [&](const json& v) {
                                opts.sigma = v.get<double>();
                            }});
        bindings.push_back({"kernel_size", opts.kernel_opt,
                            [&](const json& v) {
                                opts.kernel_size = v.get<int>();
                            }});
        apply_config_file(opts.pipeline.config_path, bindings);
    }
    if (!(opts.sigma > 0.0)) {
        throw ParamError("sigma must be positive, got " +
                         std::to_string(opts.sigma));
    }
    if (opts.kernel_size != 0 &&
        (opts.kernel_size < 1 || opts.kernel_size % 2 == 0)) {
        throw ParamError("kernel size must be odd and positive, got " +
                         std::to_string(opts.kernel_size));
    }
    FocusSpec focus;
    focus.sigma = opts.sigma;
    focus.ranges = parse_focus(opts.focus_text);
    // Ranges reaching past the search range are trimmed to it.
    for (auto& [lo, hi] : focus.ranges) {
        lo = std::min(lo, opts.pipeline.config.max_disparity);
        hi = std::min(hi, opts.pipeline.config.max_disparity);
    }
    const RgbImage left = load_image(opts.left);
    const RgbImage right = load_image(opts.right);
    DepthResult depth;
    const RgbImage out = run_refocus_pipeline(left, right,
                                              opts.pipeline.config, focus,
                                              opts.kernel_size, &depth);
    save_rgb(out, opts.out);
    if (!opts.debug_dir.empty()) {
        dump_depth_debug(depth, 8.0, opts.debug_dir);
        const GrayImage blur_map = build_blur_map(
            depth.dense, focus, opts.pipeline.config.max_disparity);
        GrayImage visible = blur_map;
        for (std::uint8_t& v : visible.data) {
            v = v ? 255 : 0;
        }
        save_gray(visible, opts.debug_dir + "/blur_map.pgm");
    }
    std::cout << json{{"out", opts.out},
                      {"matched_fraction", depth.stats.matched_fraction}}
                     .dump()
              << "\n";
    return 0;
}

struct EvalOpts {
    std::string computed, truth;
    double scale = 0.0;
    double delta = 1.0;
    int workers = 1;
};

int run_eval(const EvalOpts& opts) {
    if (!(opts.scale > 0.0)) {
        throw ParamError("scale must be positive, got " +
                         std::to_string(opts.scale));
    }
    if (opts.delta < 0.0) {
        throw ParamError("delta must be >= 0, got " +
                         std::to_string(opts.delta));
    }
    const DisparityMap computed = load_disparity(opts.computed, opts.scale);
    const DisparityMap truth = load_ground_truth(opts.truth, opts.scale);
    const EvalResult result =
        bad_pixel_rate(computed, truth, opts.delta, opts.workers);
    std::cout << eval_report_json(result) << "\n";
    return 0;
}

struct BenchOpts {
    std::string frames_dir, workers_text = "1,4", csv_path;
    PipelineFlags pipeline;
};

int run_bench(BenchOpts& opts) {
    if (!opts.pipeline.config_path.empty()) {
        apply_config_file(opts.pipeline.config_path,
                          opts.pipeline.bindings());
    }
    const std::vector<int> workers = parse_worker_list(opts.workers_text);
    const std::vector<StereoPair> frames = load_frames(opts.frames_dir);
    const std::vector<BenchReport> reports =
        run_benchmark(frames, workers, opts.pipeline.config);
    const std::string csv = benchmark_csv(reports);
    if (opts.csv_path.empty()) {
        std::cout << csv;
        return 0;
    }
    std::ofstream out(opts.csv_path, std::ios::trunc);
    if (!out) {
        throw IoError("cannot open " + opts.csv_path + " for writing");
    }
    out << csv;
    if (!out) {
        throw IoError("write failed: " + opts.csv_path);
    }
    json summary;
    summary["csv"] = opts.csv_path;
    summary["frames"] = reports.front().frames;
    for (const BenchReport& report : reports) {
        summary["speedup"][std::to_string(report.workers)] = report.speedup;
    }
    std::cout << summary.dump() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Boundary-driven stereo depth estimation and selective "
                 "refocus"};
    app.require_subcommand(1);

    DepthOpts depth_opts;
    CLI::App* depth = app.add_subcommand(
        "depth", "Estimate a dense disparity map from a rectified pair");
    depth->add_option("--left", depth_opts.left, "Left image (PNG/PPM)")
        ->required();
    depth->add_option("--right", depth_opts.right, "Right image (PNG/PPM)")
        ->required();
    depth->add_option("--out", depth_opts.out, "Output disparity PGM")
        ->required();
    depth_opts.scale_opt = depth->add_option(
        "--scale", depth_opts.scale, "Output encoding scale (value = d * scale)");
    depth->add_option("--debug-dir", depth_opts.debug_dir,
                      "Dump per-stage images into this directory");
    depth_opts.pipeline.add(depth);

    RefocusOpts refocus_opts;
    CLI::App* refocus = app.add_subcommand(
        "refocus", "Blur everything outside the in-focus disparity ranges");
    refocus->add_option("--left", refocus_opts.left, "Left image (PNG/PPM)")
        ->required();
    refocus->add_option("--right", refocus_opts.right, "Right image (PNG/PPM)")
        ->required();
    refocus->add_option("--out", refocus_opts.out, "Output image (PNG/PPM)")
        ->required();
    refocus->add_option("--focus", refocus_opts.focus_text,
                        "In-focus disparity ranges lo:hi[,lo:hi...]")
        ->required();
    refocus_opts.sigma_opt = refocus->add_option(
        "--sigma", refocus_opts.sigma, "Gaussian blur strength");
    refocus_opts.kernel_opt = refocus->add_option(
        "--kernel-size", refocus_opts.kernel_size,
        "Odd kernel side (default: derived from sigma)");
    refocus->add_option("--debug-dir", refocus_opts.debug_dir,
                        "Dump per-stage images into this directory");
    refocus_opts.pipeline.add(refocus);

    EvalOpts eval_opts;
    CLI::App* eval = app.add_subcommand(
        "eval", "Compare a computed disparity map against ground truth");
    eval->add_option("computed", eval_opts.computed,
                     "Computed disparity PGM")
        ->required();
    eval->add_option("--truth", eval_opts.truth, "Ground-truth image")
        ->required();
    eval->add_option("--scale", eval_opts.scale,
                     "Ground-truth encoding scale (value = d * scale)")
        ->required();
    eval->add_option("--delta", eval_opts.delta, "Bad-pixel tolerance");
    eval->add_option("--workers", eval_opts.workers, "Comparison threads");

    BenchOpts bench_opts;
    CLI::App* bench = app.add_subcommand(
        "bench", "Time the pipeline serial vs parallel over a frame batch");
    bench->add_option("frames", bench_opts.frames_dir,
                      "Directory of <stem>_L/<stem>_R frame pairs")
        ->required();
    bench->add_option("--workers", bench_opts.workers_text,
                      "Comma-separated worker counts (must include 1)");
    bench->add_option("--csv", bench_opts.csv_path,
                      "Write the CSV here instead of stdout");
    bench_opts.pipeline.add(bench, /*with_workers=*/false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (depth->parsed()) {
            return run_depth(depth_opts);
        }
        if (refocus->parsed()) {
            return run_refocus(refocus_opts);
        }
        if (eval->parsed()) {
            return run_eval(eval_opts);
        }
        if (bench->parsed()) {
            return run_bench(bench_opts);
        }
    } catch (const ParamError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
