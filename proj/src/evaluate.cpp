#include "stereotk/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "stereotk/error.hpp"
#include "stereotk/image.hpp"
#include "stereotk/parallel.hpp"

namespace stereotk {

EvalResult bad_pixel_rate(const DisparityMap& computed,
                          const DisparityMap& truth, double delta_d,
                          int workers) {
    if (computed.width != truth.width || computed.height != truth.height) {
        throw ParamError("bad_pixel_rate: computed " +
                         std::to_string(computed.width) + "x" +
                         std::to_string(computed.height) + " vs truth " +
                         std::to_string(truth.width) + "x" +
                         std::to_string(truth.height));
    }
    if (delta_d < 0.0) {
        throw ParamError("bad_pixel_rate: delta_d must be >= 0, got " +
                         std::to_string(delta_d));
    }

    struct Partial {
        std::uint64_t compared = 0;
        std::uint64_t bad = 0;
    };
    const int height = computed.height;
    const int width = computed.width;
    const int blocks = std::max(1, std::min(workers, height));
    std::vector<Partial> partial(blocks);
    parallel_for(blocks, workers, [&](std::int64_t b) {
        const int row_begin = static_cast<int>(b * height / blocks);
        const int row_end = static_cast<int>((b + 1) * height / blocks);
        Partial& p = partial[b];
        for (int y = row_begin; y < row_end; ++y) {
            for (int x = 0; x < width; ++x) {
                const std::int16_t c = computed.at(x, y);
                const std::int16_t t = truth.at(x, y);
                if (c < 0 || t < 0) {
                    continue;
                }
                ++p.compared;
                if (std::abs(c - t) > delta_d) {
                    ++p.bad;
                }
            }
        }
    });

    EvalResult result;
    result.delta_d = delta_d;
    std::uint64_t bad = 0;
    for (const Partial& p : partial) {
        result.compared += p.compared;
        bad += p.bad;
    }
    result.excluded = static_cast<std::uint64_t>(width) * height -
                      result.compared;
    result.bad_pixel_rate =
        result.compared == 0
            ? 0.0
            : static_cast<double>(bad) / static_cast<double>(result.compared);
    return result;
}

DisparityMap load_ground_truth(const std::string& path, double scale) {
    if (!(scale > 0.0)) {
        throw ParamError("load_ground_truth: scale must be positive, got " +
                         std::to_string(scale));
    }
    const GrayImage raw = load_gray(path);
    DisparityMap truth(raw.width, raw.height);
    for (std::size_t i = 0; i < raw.data.size(); ++i) {
        if (raw.data[i] == 0) {
            continue; // 0 marks pixels the dataset does not compare
        }
        truth.values[i] = static_cast<std::int16_t>(
            std::lround(raw.data[i] / scale));
    }
    return truth;
}

DisparityMap dense_sad_baseline(const GrayImage& left, const GrayImage& right,
                                const MatchConfig& config, int workers) {
    if (left.width != right.width || left.height != right.height) {
        throw ParamError("dense_sad_baseline: image sizes differ, left " +
                         std::to_string(left.width) + "x" +
                         std::to_string(left.height) + " vs right " +
                         std::to_string(right.width) + "x" +
                         std::to_string(right.height));
    }
    if (config.window < 1 || config.window % 2 == 0) {
        throw ParamError("dense_sad_baseline: window must be odd and "
                         "positive, got " + std::to_string(config.window));
    }
    if (config.max_disparity < 0) {
        throw ParamError("dense_sad_baseline: max_disparity must be >= 0, "
                         "got " + std::to_string(config.max_disparity));
    }

    DisparityMap out(left.width, left.height);
    const int h = config.window / 2;
    const int width = left.width;
    const int height = left.height;
    parallel_for(height, workers, [&](std::int64_t row) {
        const int y = static_cast<int>(row);
        if (y < h || y >= height - h) {
            return;
        }
        for (int x = h; x < width - h; ++x) {
            const int d_limit = std::min(config.max_disparity, x - h);
            std::uint32_t best_cost = std::numeric_limits<std::uint32_t>::max();
            int best_d = 0;
            for (int d = 0; d <= d_limit; ++d) {
                const std::uint32_t cost =
                    sad_cost(left, right, x, y, d, config.window);
                if (cost < best_cost) {
                    best_cost = cost;
                    best_d = d;
                }
            }
            out.at(x, y) = static_cast<std::int16_t>(best_d);
        }
    });
    return out;
}

std::string disparity_mask_path(const std::string& path) {
    const std::size_t slash = path.find_last_of("/\\");
    const std::size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) {
        return path + ".mask.pgm";
    }
    return path.substr(0, dot) + ".mask" + path.substr(dot);
}

void save_disparity(const DisparityMap& map, const std::string& path,
                    double output_scale) {
    if (!(output_scale > 0.0)) {
        throw ParamError("save_disparity: scale must be positive, got " +
                         std::to_string(output_scale));
    }
    GrayImage values(map.width, map.height);
    GrayImage known(map.width, map.height);
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        const std::int16_t d = map.values[i];
        if (d < 0) {
            continue;
        }
        const long scaled = std::lround(d * output_scale);
        if (scaled < 0 || scaled > 255) {
            throw ParamError("save_disparity: disparity " + std::to_string(d) +
                             " at scale " + std::to_string(output_scale) +
                             " does not fit in 8 bits");
        }
        values.data[i] = static_cast<std::uint8_t>(scaled);
        known.data[i] = 255;
    }
    // Trim trailing zeros from the printed scale for stable, readable files.
    std::string scale_text = std::to_string(output_scale);
    while (scale_text.find('.') != std::string::npos &&
           (scale_text.back() == '0' || scale_text.back() == '.')) {
        const bool dot = scale_text.back() == '.';
        scale_text.pop_back();
        if (dot) {
            break;
        }
    }
    save_gray(values, path, {"scale " + scale_text});
    save_gray(known, disparity_mask_path(path));
}

DisparityMap load_disparity(const std::string& path, double fallback_scale) {
    std::vector<std::string> comments;
    const GrayImage raw = load_gray(path, &comments);

    double scale = fallback_scale > 0.0 ? fallback_scale : 1.0;
    for (const std::string& comment : comments) {
        if (comment.rfind("scale ", 0) == 0) {
            try {
                scale = std::stod(comment.substr(6));
            } catch (const std::exception&) {
                throw FormatError(path + ": bad scale comment '" + comment +
                                  "'");
            }
            if (!(scale > 0.0)) {
                throw FormatError(path + ": non-positive scale comment");
            }
            break;
        }
    }

    const std::string mask_path = disparity_mask_path(path);
    DisparityMap map(raw.width, raw.height);
    if (std::filesystem::exists(mask_path)) {
        const GrayImage known = load_gray(mask_path);
        if (known.width != raw.width || known.height != raw.height) {
            throw FormatError(mask_path + ": mask size does not match " +
                              path);
        }
        for (std::size_t i = 0; i < raw.data.size(); ++i) {
            if (known.data[i] != 0) {
                map.values[i] = static_cast<std::int16_t>(
                    std::lround(raw.data[i] / scale));
            }
        }
    } else {
        for (std::size_t i = 0; i < raw.data.size(); ++i) {
            if (raw.data[i] != 0) {
                map.values[i] = static_cast<std::int16_t>(
                    std::lround(raw.data[i] / scale));
            }
        }
    }
    return map;
}

std::string eval_report_json(const EvalResult& result) {
    nlohmann::json report;
    report["bad_pixel_rate"] = result.bad_pixel_rate;
    report["compared"] = result.compared;
    report["excluded"] = result.excluded;
    report["delta_d"] = result.delta_d;
    return report.dump();
}

} // namespace stereotk
