#include "stereotk/boundary.hpp"

#include <algorithm>
#include <string>

#include "stereotk/error.hpp"
#include "stereotk/parallel.hpp"

namespace stereotk {

BoundaryMask detect_boundaries(const LabelMap& labels, int workers) {
    BoundaryMask out(labels.width, labels.height);
    const int width = labels.width;
    const int height = labels.height;
    parallel_for(height, workers, [&](std::int64_t y) {
        for (int x = 0; x < width; ++x) {
            const std::uint16_t here = labels.at(x, static_cast<int>(y));
            bool boundary = false;
            for (int dy = -1; dy <= 1 && !boundary; ++dy) {
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) {
                        continue;
                    }
                    const int nx = x + dx;
                    const int ny = static_cast<int>(y) + dy;
                    if (nx < 0 || nx >= width || ny < 0 || ny >= height) {
                        continue;
                    }
                    if (labels.at(nx, ny) != here) {
                        boundary = true;
                        break;
                    }
                }
            }
            out.at(x, static_cast<int>(y)) = boundary ? 1 : 0;
        }
    });
    return out;
}

BoundaryMask morph_fill(const BoundaryMask& mask, int workers) {
    BoundaryMask out = mask;
    const int width = mask.width;
    const int height = mask.height;
    if (width < 3 || height < 3) {
        return out; // no pixel has a complete 8-neighbourhood
    }
    parallel_for(height - 2, workers, [&](std::int64_t i) {
        const int y = static_cast<int>(i) + 1;
        for (int x = 1; x < width - 1; ++x) {
            if (mask.at(x, y) != 0) {
                continue;
            }
            if (mask.at(x - 1, y - 1) && mask.at(x, y - 1) &&
                mask.at(x + 1, y - 1) && mask.at(x - 1, y) &&
                mask.at(x + 1, y) && mask.at(x - 1, y + 1) &&
                mask.at(x, y + 1) && mask.at(x + 1, y + 1)) {
                out.at(x, y) = 1;
            }
        }
    });
    return out;
}

BoundaryMask morph_remove(const BoundaryMask& mask, int workers) {
    BoundaryMask out = mask;
    const int width = mask.width;
    const int height = mask.height;
    if (width < 3 || height < 3) {
        return out; // no pixel has all four 4-neighbours
    }
    parallel_for(height - 2, workers, [&](std::int64_t i) {
        const int y = static_cast<int>(i) + 1;
        for (int x = 1; x < width - 1; ++x) {
            if (mask.at(x, y) == 0) {
                continue;
            }
            if (mask.at(x, y - 1) && mask.at(x - 1, y) && mask.at(x + 1, y) &&
                mask.at(x, y + 1)) {
                out.at(x, y) = 0;
            }
        }
    });
    return out;
}

ComponentTable label_components(const BoundaryMask& mask) {
    ComponentTable table;
    table.width = mask.width;
    table.height = mask.height;
    table.labels.assign(mask.mask.size(), -1);

    const int width = mask.width;
    const int height = mask.height;
    std::vector<std::int32_t> stack;
    for (int start_y = 0; start_y < height; ++start_y) {
        for (int start_x = 0; start_x < width; ++start_x) {
            const std::size_t start =
                static_cast<std::size_t>(start_y) * width + start_x;
            if (mask.mask[start] == 0 || table.labels[start] >= 0) {
                continue;
            }
            const std::int32_t label =
                static_cast<std::int32_t>(table.sizes.size());
            table.sizes.push_back(0);
            table.labels[start] = label;
            stack.push_back(static_cast<std::int32_t>(start));
            while (!stack.empty()) {
                const std::int32_t index = stack.back();
                stack.pop_back();
                ++table.sizes[label];
                const int x = index % width;
                const int y = index / width;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        if (dx == 0 && dy == 0) {
                            continue;
                        }
                        const int nx = x + dx;
                        const int ny = y + dy;
                        if (nx < 0 || nx >= width || ny < 0 || ny >= height) {
                            continue;
                        }
                        const std::size_t n =
                            static_cast<std::size_t>(ny) * width + nx;
                        if (mask.mask[n] != 0 && table.labels[n] < 0) {
                            table.labels[n] = label;
                            stack.push_back(static_cast<std::int32_t>(n));
                        }
                    }
                }
            }
        }
    }

    table.by_size.resize(table.sizes.size());
    for (std::size_t i = 0; i < table.by_size.size(); ++i) {
        table.by_size[i] = static_cast<std::int32_t>(i);
    }
    std::sort(table.by_size.begin(), table.by_size.end(),
              [&](std::int32_t a, std::int32_t b) {
                  if (table.sizes[a] != table.sizes[b]) {
                      return table.sizes[a] < table.sizes[b];
                  }
                  return a < b;
              });
    return table;
}

BoundaryMask prune_components(const BoundaryMask& mask, double fraction) {
    if (!(fraction >= 0.0 && fraction < 1.0)) {
        throw ParamError("prune_components: fraction must be in [0, 1), got " +
                         std::to_string(fraction));
    }
    const ComponentTable table = label_components(mask);
    const double budget = fraction * static_cast<double>(mask.count());

    std::vector<bool> remove(table.sizes.size(), false);
    std::uint64_t removed = 0;
    for (std::int32_t label : table.by_size) {
        if (static_cast<double>(removed + table.sizes[label]) > budget) {
            break; // this component would overshoot; larger ones would too
        }
        removed += table.sizes[label];
        remove[label] = true;
    }

    BoundaryMask out = mask;
    if (removed > 0) {
        for (std::size_t i = 0; i < out.mask.size(); ++i) {
            const std::int32_t label = table.labels[i];
            if (label >= 0 && remove[label]) {
                out.mask[i] = 0;
            }
        }
    }
    return out;
}

BoundaryMask add_border_anchors(const BoundaryMask& mask, int margin) {
    if (margin < 0 || 2 * margin >= mask.width) {
        throw ParamError("add_border_anchors: margin " +
                         std::to_string(margin) + " does not fit in width " +
                         std::to_string(mask.width));
    }
    BoundaryMask out = mask;
    const int left = margin;
    const int right = mask.width - 1 - margin;
    const int row_end = mask.height - 1 - margin;
    for (int y = margin; y <= row_end; ++y) {
        out.at(left, y) = 1;
        out.at(right, y) = 1;
    }
    return out;
}

} // namespace stereotk
