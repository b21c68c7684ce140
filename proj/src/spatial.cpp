#include "lava/spatial.hpp"

#include <algorithm>
#include <stdexcept>

namespace lava {

BinaryMask BinaryMask::make(int height, int width,
                            std::vector<std::uint8_t> values) {
    if (height <= 0 || width <= 0) {
        throw std::invalid_argument("BinaryMask: dimensions must be positive");
    }
    if (values.size() != static_cast<std::size_t>(height) * width) {
        throw std::invalid_argument("BinaryMask: value count mismatch");
    }
    for (auto v : values) {
        if (v > 1) throw std::invalid_argument("BinaryMask: entries must be 0/1");
    }
    BinaryMask m;
    m.height = height;
    m.width = width;
    m.values = std::move(values);
    return m;
}

namespace {

enum class Morph { kDilate, kErode };

// Out-of-bounds positions are skipped for both operators, which makes
// dilation/erosion an adjunction on the finite grid; the resulting closing
// is extensive and idempotent including at the borders.
void morph_rows(const BinaryMask& in, BinaryMask& out, int radius, Morph op,
                int row_begin, int row_end) {
    const int h = in.height;
    const int w = in.width;
    const std::uint8_t hit = op == Morph::kDilate ? 1 : 0;
    for (int y = row_begin; y < row_end; ++y) {
        for (int x = 0; x < w; ++x) {
            std::uint8_t result = op == Morph::kDilate ? 0 : 1;
            for (int dy = -radius; dy <= radius && result != hit; ++dy) {
                const int yy = y + dy;
                if (yy < 0 || yy >= h) continue;
                for (int dx = -radius; dx <= radius; ++dx) {
                    const int xx = x + dx;
                    if (xx < 0 || xx >= w) continue;
                    if (in.values[static_cast<std::size_t>(yy) * w + xx] == hit) {
                        result = hit;
                        break;
                    }
                }
            }
            out.values[static_cast<std::size_t>(y) * w + x] = result;
        }
    }
}

BinaryMask morph(const BinaryMask& mask, int radius, Morph op, bool parallel) {
    if (radius < 1) throw std::invalid_argument("morphology: radius must be >= 1");
    BinaryMask out = mask;
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (int y = 0; y < mask.height; ++y) {
            morph_rows(mask, out, radius, op, y, y + 1);
        }
    } else {
        morph_rows(mask, out, radius, op, 0, mask.height);
    }
    return out;
}

}  // namespace

namespace {

// Closing is computed on a radius-padded grid so the dilation can spill
// past the original border before eroding back; the result then equals the
// unbounded-grid closing restricted to the mask's domain, which is both
// extensive and idempotent and leaves solid convex shapes untouched.
BinaryMask embed(const BinaryMask& mask, int radius) {
    const int h = mask.height + 2 * radius;
    const int w = mask.width + 2 * radius;
    std::vector<std::uint8_t> values(static_cast<std::size_t>(h) * w, 0);
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            values[static_cast<std::size_t>(y + radius) * w + (x + radius)] =
                mask.values[static_cast<std::size_t>(y) * mask.width + x];
        }
    }
    return BinaryMask::make(h, w, std::move(values));
}

BinaryMask crop(const BinaryMask& padded, int radius, int height, int width) {
    std::vector<std::uint8_t> values(static_cast<std::size_t>(height) * width);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            values[static_cast<std::size_t>(y) * width + x] =
                padded.values[static_cast<std::size_t>(y + radius) * padded.width +
                              (x + radius)];
        }
    }
    return BinaryMask::make(height, width, std::move(values));
}

BinaryMask close_impl(const BinaryMask& mask, int radius, bool parallel) {
    const auto padded = embed(mask, radius);
    const auto opened = morph(morph(padded, radius, Morph::kDilate, parallel),
                              radius, Morph::kErode, parallel);
    return crop(opened, radius, mask.height, mask.width);
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, int radius) {
    return morph(mask, radius, Morph::kDilate, true);
}

BinaryMask erode(const BinaryMask& mask, int radius) {
    return morph(mask, radius, Morph::kErode, true);
}

BinaryMask morphological_close(const BinaryMask& mask, int radius) {
    return close_impl(mask, radius, true);
}

namespace reference {

BinaryMask morphological_close_serial(const BinaryMask& mask, int radius) {
    return close_impl(mask, radius, false);
}

}  // namespace reference

SpatialReport spatial_metrics(const TamperMap& pred, const BinaryMask& gt,
                              double binarize_threshold, bool refine,
                              int radius) {
    if (pred.height != gt.height || pred.width != gt.width) {
        throw std::invalid_argument("spatial_metrics: dimension mismatch");
    }
    std::vector<std::uint8_t> bin(pred.values.size());
    for (std::size_t i = 0; i < pred.values.size(); ++i) {
        bin[i] = pred.values[i] >= binarize_threshold ? 1 : 0;
    }
    BinaryMask mask = BinaryMask::make(pred.height, pred.width, std::move(bin));
    if (refine) mask = morphological_close(mask, radius);

    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t fn = 0;
    for (std::size_t i = 0; i < mask.values.size(); ++i) {
        const bool p = mask.values[i] != 0;
        const bool g = gt.values[i] != 0;
        tp += (p && g) ? 1 : 0;
        fp += (p && !g) ? 1 : 0;
        fn += (!p && g) ? 1 : 0;
    }
    SpatialReport report;
    report.refined = refine;
    const std::size_t uni = tp + fp + fn;
    report.iou = uni == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(uni);
    report.recall =
        (tp + fn) == 0 ? 1.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
    const double precision =
        (tp + fp) == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
    report.f1 = (precision + report.recall) == 0.0
                    ? 0.0
                    : 2.0 * precision * report.recall / (precision + report.recall);
    if (uni == 0) report.f1 = 1.0;  // vacuous agreement
    return report;
}

}  // namespace lava
