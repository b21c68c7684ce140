// Frame- and video-level detection metrics: non-interpolated average
// precision, temporal IoU, video-level false positive rate and ROC-AUC.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lava {

// Non-interpolated average precision over distinct score thresholds.
// Tied scores are grouped so that permuting equal-score frames cannot
// change the result. Throws std::invalid_argument unless both classes
// are present.
double average_precision(std::span<const double> scores,
                         std::span<const std::uint8_t> labels);

// Frame-set IoU between {t : probs[t] >= threshold} and the positive
// label set.  Both empty -> 1.0, exactly one empty -> 0.0.
double temporal_iou(std::span<const double> probs,
                    std::span<const std::uint8_t> labels,
                    double threshold = 0.5);

struct ScoredVideo {
    std::span<const double> probs;
    std::span<const std::uint8_t> labels;
};

// Fraction of authentic videos (all labels 0) with any frame probability
// at or above the threshold. Throws when there is no authentic video.
double false_positive_rate(std::span<const ScoredVideo> videos,
                           double threshold = 0.5);

// Video-level ROC-AUC with video score = max frame probability and video
// label = any frame tampered. Ties counted as half.
double video_level_auc(std::span<const ScoredVideo> videos);

// Pearson correlation; returns 0 when either side has zero variance.
double pearson_correlation(std::span<const double> a, std::span<const double> b);

}  // namespace lava
