// Core inference: per-video reliability gate, offset-bank alignment search,
// per-frame confidence-weighted fusion, and the gate-unified output.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lava/model.hpp"

namespace lava {

struct GateConfig {
    double tau = 0.1;

    void validate() const;
};

struct GateDecision {
    int g = 0;               // 1 = visual channel globally unreliable
    double visual_mean = 0.0;
};

struct OffsetBank {
    std::vector<double> offsets_seconds;

    static OffsetBank default_bank();
    void validate() const;  // must contain 0 and be sorted ascending
};

struct ConfidenceConfig {
    int half_window = 3;

    void validate() const;
};

enum class OffsetMeasure { kOracleAp, kCrossCorrelation };

const char* to_string(OffsetMeasure m);
OffsetMeasure offset_measure_from_string(const std::string& name);

struct FusionResult {
    std::vector<double> fused;
    GateDecision gate;
    double chosen_offset_seconds = 0.0;
    bool offset_fallback = false;  // selection fell back to 0 (degenerate labels)
    // Present only when g == 0.
    std::vector<double> audio_confidence;
    std::vector<double> visual_confidence;
};

// g = 1 iff mean visual score strictly exceeds tau.
GateDecision reliability_gate(const ScoreSequence& visual, const GateConfig& config);

// max(0, 1 - 4 * sample variance) over the window [t-W, t+W] truncated to
// the sequence; unbiased variance for n >= 2, zero for n = 1.
double frame_confidence(std::span<const double> values, int t,
                        const ConfidenceConfig& config);

// frame_confidence evaluated at every frame.
std::vector<double> confidence_profile(std::span<const double> values,
                                       const ConfidenceConfig& config);

// Confidence-weighted combination; falls back to the plain mean where both
// confidences vanish.
std::vector<double> fuse_frames(std::span<const double> audio_shifted,
                                std::span<const double> visual,
                                const ConfidenceConfig& config);

struct OffsetSelection {
    double delta_star = 0.0;
    std::vector<double> fused;
    bool fallback = false;
};

// Search the candidate bank for the correction offset maximizing the
// measure: per-video average precision against labels (oracle mode) or
// Pearson correlation between shifted audio and visual (label-free mode).
// Ties break toward smallest |delta|, then the smaller delta.
OffsetSelection select_offset(const ScoreSequence& audio,
                              const ScoreSequence& visual,
                              const FrameLabels& labels,
                              const GateDecision& gate,
                              const OffsetBank& bank,
                              const VideoMeta& meta,
                              OffsetMeasure measure,
                              const ConfidenceConfig& confidence);

// Gate, then offset selection on the branch the gate dictates: shifted
// audio alone when g = 1 (spatial maps are suppressed downstream), the
// confidence-weighted combination when g = 0. Stretch correction is the
// caller's responsibility and must already have run.
FusionResult run_fusion(const VideoRecord& record, const GateConfig& gate_cfg,
                        const OffsetBank& bank, const ConfidenceConfig& conf_cfg,
                        OffsetMeasure measure);

}  // namespace lava
