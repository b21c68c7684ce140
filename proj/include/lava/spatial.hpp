// Pixel-level localization: binary mask morphology (square structuring
// element) and IoU/recall/F1 reporting with optional closing refinement.
#pragma once

#include <cstdint>
#include <vector>

#include "lava/model.hpp"

namespace lava {

struct BinaryMask {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> values;  // row-major, 0/1

    static BinaryMask make(int height, int width, std::vector<std::uint8_t> values);
};

BinaryMask dilate(const BinaryMask& mask, int radius);
BinaryMask erode(const BinaryMask& mask, int radius);

// Dilation followed by erosion, side 2*radius+1 square element.
BinaryMask morphological_close(const BinaryMask& mask, int radius);

struct SpatialReport {
    double iou = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    bool refined = false;
};

// Binarize the predicted map at the threshold, optionally close it, then
// report pixel IoU, recall and F1 against the ground-truth mask.
SpatialReport spatial_metrics(const TamperMap& pred, const BinaryMask& gt,
                              double binarize_threshold = 0.5,
                              bool refine = false, int radius = 2);

namespace reference {
// Straightforward serial closing used to cross-check the parallel kernels.
BinaryMask morphological_close_serial(const BinaryMask& mask, int radius);
}  // namespace reference

}  // namespace lava
