// Rule-based manipulation-type classification from the per-channel
// watermark survival pattern over detected tampered segments.
#pragma once

#include <span>
#include <string>

#include "lava/fuse.hpp"
#include "lava/model.hpp"

namespace lava {

enum class AttributionLabel {
    kAuthentic,
    kFaceSwap,
    kVoiceClone,
    kJointDeepfake,
    kIndeterminate,
};

const char* to_string(AttributionLabel label);
AttributionLabel attribution_label_from_string(const std::string& name);

struct AttributionConfig {
    double elevation_threshold = 0.5;
    double min_elevated_fraction = 0.5;

    void validate() const;
};

struct AttributionVerdict {
    AttributionLabel label = AttributionLabel::kAuthentic;
    double visual_segment_mean = 0.0;
    double audio_segment_mean = 0.0;
    // Set when the gate suppressed the visual channel and only audio
    // evidence backs the verdict.
    bool low_confidence = false;
};

// Candidate tampered segments are the frames whose calibrated probability
// reaches 0.5. A channel counts as elevated when both its mean over those
// frames exceeds the threshold and enough individual frames do; visual
// elevation additionally requires g = 0.
AttributionVerdict attribute(const VideoRecord& record,
                             const FusionResult& fusion,
                             std::span<const double> calibrated_probs,
                             const AttributionConfig& config);

}  // namespace lava
