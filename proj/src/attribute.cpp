#include "lava/attribute.hpp"

#include <stdexcept>

namespace lava {

const char* to_string(AttributionLabel label) {
    switch (label) {
        case AttributionLabel::kAuthentic: return "authentic";
        case AttributionLabel::kFaceSwap: return "face-swap";
        case AttributionLabel::kVoiceClone: return "voice-clone";
        case AttributionLabel::kJointDeepfake: return "joint-deepfake";
        case AttributionLabel::kIndeterminate: return "indeterminate";
    }
    return "authentic";
}

AttributionLabel attribution_label_from_string(const std::string& name) {
    if (name == "authentic") return AttributionLabel::kAuthentic;
    if (name == "face-swap") return AttributionLabel::kFaceSwap;
    if (name == "voice-clone") return AttributionLabel::kVoiceClone;
    if (name == "joint-deepfake") return AttributionLabel::kJointDeepfake;
    if (name == "indeterminate") return AttributionLabel::kIndeterminate;
    throw std::invalid_argument("unknown attribution label: " + name);
}

void AttributionConfig::validate() const {
    if (!(elevation_threshold > 0.0 && elevation_threshold < 1.0)) {
        throw std::invalid_argument("AttributionConfig: threshold outside (0,1)");
    }
    if (!(min_elevated_fraction > 0.0 && min_elevated_fraction <= 1.0)) {
        throw std::invalid_argument("AttributionConfig: fraction outside (0,1]");
    }
}

AttributionVerdict attribute(const VideoRecord& record,
                             const FusionResult& fusion,
                             std::span<const double> calibrated_probs,
                             const AttributionConfig& config) {
    config.validate();
    if (calibrated_probs.size() != record.visual.values.size()) {
        throw std::invalid_argument("attribute: probability length mismatch");
    }

    double sum_v = 0.0;
    double sum_a = 0.0;
    std::size_t count = 0;
    std::size_t elevated_v = 0;
    std::size_t elevated_a = 0;
    for (std::size_t t = 0; t < calibrated_probs.size(); ++t) {
        if (calibrated_probs[t] < 0.5) continue;
        ++count;
        sum_v += record.visual.values[t];
        sum_a += record.audio.values[t];
        elevated_v += record.visual.values[t] > config.elevation_threshold ? 1 : 0;
        elevated_a += record.audio.values[t] > config.elevation_threshold ? 1 : 0;
    }

    AttributionVerdict verdict;
    if (count == 0) {
        verdict.label = AttributionLabel::kAuthentic;
        return verdict;
    }
    verdict.visual_segment_mean = sum_v / static_cast<double>(count);
    verdict.audio_segment_mean = sum_a / static_cast<double>(count);

    auto channel_elevated = [&](double mean, std::size_t elevated) {
        return mean > config.elevation_threshold &&
               static_cast<double>(elevated) >=
                   config.min_elevated_fraction * static_cast<double>(count);
    };
    const bool gate_closed = fusion.gate.g == 0;
    const bool v_up = gate_closed &&
                      channel_elevated(verdict.visual_segment_mean, elevated_v);
    const bool a_up = channel_elevated(verdict.audio_segment_mean, elevated_a);

    if (fusion.gate.g == 1) {
        if (!a_up) {
            verdict.label = AttributionLabel::kIndeterminate;
        } else {
            // Visual evidence is unavailable; audio-only patterns cannot
            // separate voice cloning from a joint manipulation.
            verdict.label = AttributionLabel::kVoiceClone;
            verdict.low_confidence = true;
        }
        return verdict;
    }
    if (v_up && a_up) {
        verdict.label = AttributionLabel::kJointDeepfake;
    } else if (v_up) {
        verdict.label = AttributionLabel::kFaceSwap;
    } else if (a_up) {
        verdict.label = AttributionLabel::kVoiceClone;
    } else {
        verdict.label = AttributionLabel::kAuthentic;
    }
    return verdict;
}

}  // namespace lava
