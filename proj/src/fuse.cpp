#include "lava/fuse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lava/align.hpp"
#include "lava/metrics.hpp"

namespace lava {

void GateConfig::validate() const {
    if (!(tau > 0.0 && tau < 1.0)) {
        throw std::invalid_argument("GateConfig: tau outside (0,1)");
    }
}

OffsetBank OffsetBank::default_bank() {
    OffsetBank bank;
    bank.offsets_seconds = {-1.0, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 0.75, 1.0};
    return bank;
}

void OffsetBank::validate() const {
    if (!std::is_sorted(offsets_seconds.begin(), offsets_seconds.end())) {
        throw std::invalid_argument("OffsetBank: offsets must be sorted");
    }
    if (std::find(offsets_seconds.begin(), offsets_seconds.end(), 0.0) ==
        offsets_seconds.end()) {
        throw std::invalid_argument("OffsetBank: must contain 0");
    }
}

void ConfidenceConfig::validate() const {
    if (half_window < 1) {
        throw std::invalid_argument("ConfidenceConfig: half_window < 1");
    }
}

const char* to_string(OffsetMeasure m) {
    return m == OffsetMeasure::kOracleAp ? "oracle-ap" : "cross-correlation";
}

OffsetMeasure offset_measure_from_string(const std::string& name) {
    if (name == "oracle-ap") return OffsetMeasure::kOracleAp;
    if (name == "cross-correlation") return OffsetMeasure::kCrossCorrelation;
    throw std::invalid_argument("unknown offset measure: " + name);
}

GateDecision reliability_gate(const ScoreSequence& visual, const GateConfig& config) {
    config.validate();
    if (visual.values.empty()) {
        throw std::invalid_argument("reliability_gate: empty sequence");
    }
    double sum = 0.0;
    for (double v : visual.values) sum += v;
    GateDecision decision;
    decision.visual_mean = sum / static_cast<double>(visual.values.size());
    decision.g = decision.visual_mean > config.tau ? 1 : 0;
    return decision;
}

double frame_confidence(std::span<const double> values, int t,
                        const ConfidenceConfig& config) {
    config.validate();
    const int n = static_cast<int>(values.size());
    if (t < 0 || t >= n) {
        throw std::invalid_argument("frame_confidence: index out of range");
    }
    const int lo = std::max(0, t - config.half_window);
    const int hi = std::min(n, t + config.half_window + 1);
    const int count = hi - lo;
    if (count < 2) return 1.0;  // single sample: zero variance
    double mean = 0.0;
    for (int i = lo; i < hi; ++i) mean += values[static_cast<std::size_t>(i)];
    mean /= count;
    double ss = 0.0;
    for (int i = lo; i < hi; ++i) {
        const double d = values[static_cast<std::size_t>(i)] - mean;
        ss += d * d;
    }
    const double variance = ss / (count - 1);
    return std::max(0.0, 1.0 - 4.0 * variance);
}

std::vector<double> confidence_profile(std::span<const double> values,
                                       const ConfidenceConfig& config) {
    std::vector<double> out(values.size());
    for (int t = 0; t < static_cast<int>(values.size()); ++t) {
        out[static_cast<std::size_t>(t)] = frame_confidence(values, t, config);
    }
    return out;
}

namespace {

std::vector<double> fuse_with_confidences(std::span<const double> audio,
                                          std::span<const double> visual,
                                          std::span<const double> c_audio,
                                          std::span<const double> c_visual) {
    std::vector<double> out(audio.size());
    for (std::size_t t = 0; t < audio.size(); ++t) {
        const double denom = c_audio[t] + c_visual[t];
        out[t] = denom > 0.0
                     ? (c_audio[t] * audio[t] + c_visual[t] * visual[t]) / denom
                     : 0.5 * (audio[t] + visual[t]);
    }
    return out;
}

}  // namespace

std::vector<double> fuse_frames(std::span<const double> audio_shifted,
                                std::span<const double> visual,
                                const ConfidenceConfig& config) {
    if (audio_shifted.size() != visual.size()) {
        throw std::invalid_argument("fuse_frames: length mismatch");
    }
    const auto ca = confidence_profile(audio_shifted, config);
    const auto cv = confidence_profile(visual, config);
    return fuse_with_confidences(audio_shifted, visual, ca, cv);
}

OffsetSelection select_offset(const ScoreSequence& audio,
                              const ScoreSequence& visual,
                              const FrameLabels& labels,
                              const GateDecision& gate,
                              const OffsetBank& bank,
                              const VideoMeta& meta,
                              OffsetMeasure measure,
                              const ConfidenceConfig& confidence) {
    bank.validate();
    if (audio.values.size() != visual.values.size() ||
        audio.values.size() != labels.values.size()) {
        throw std::invalid_argument("select_offset: length mismatch");
    }

    bool has_pos = false;
    bool has_neg = false;
    for (auto y : labels.values) (y ? has_pos : has_neg) = true;
    const bool degenerate_labels = !(has_pos && has_neg);

    const auto cv = gate.g == 0 ? confidence_profile(visual.values, confidence)
                                : std::vector<double>{};

    auto candidate = [&](double delta) {
        const int k = offset_to_frames(delta, meta.frame_rate);
        // A bank entry hypothesizes the injected offset; undoing it shifts
        // the audio the opposite way.
        auto shifted = shift_scores(audio.values, -k);
        if (gate.g == 1) return shifted;
        const auto ca = confidence_profile(shifted, confidence);
        return fuse_with_confidences(shifted, visual.values, ca, cv);
    };

    if (measure == OffsetMeasure::kOracleAp && degenerate_labels) {
        OffsetSelection fallback;
        fallback.delta_star = 0.0;
        fallback.fused = candidate(0.0);
        fallback.fallback = true;
        return fallback;
    }

    OffsetSelection best;
    bool first = true;
    double best_score = 0.0;
    for (double delta : bank.offsets_seconds) {
        auto fused = candidate(delta);
        double score = 0.0;
        if (measure == OffsetMeasure::kOracleAp) {
            score = average_precision(fused, labels.values);
        } else {
            const int k = offset_to_frames(delta, meta.frame_rate);
            const auto shifted = shift_scores(audio.values, -k);
            score = pearson_correlation(shifted, visual.values);
        }
        const bool better =
            first || score > best_score ||
            (score == best_score &&
             (std::abs(delta) < std::abs(best.delta_star) ||
              (std::abs(delta) == std::abs(best.delta_star) &&
               delta < best.delta_star)));
        if (better) {
            best.delta_star = delta;
            best.fused = std::move(fused);
            best_score = score;
            first = false;
        }
    }
    return best;
}

FusionResult run_fusion(const VideoRecord& record, const GateConfig& gate_cfg,
                        const OffsetBank& bank, const ConfidenceConfig& conf_cfg,
                        OffsetMeasure measure) {
    record.validate();
    FusionResult result;
    result.gate = reliability_gate(record.visual, gate_cfg);
    auto selection = select_offset(record.audio, record.visual, record.labels,
                                   result.gate, bank, record.meta, measure,
                                   conf_cfg);
    result.chosen_offset_seconds = selection.delta_star;
    result.offset_fallback = selection.fallback;
    result.fused = std::move(selection.fused);
    if (result.gate.g == 0) {
        const int k = offset_to_frames(selection.delta_star, record.meta.frame_rate);
        const auto shifted = shift_scores(record.audio.values, -k);
        result.audio_confidence = confidence_profile(shifted, conf_cfg);
        result.visual_confidence = confidence_profile(record.visual.values, conf_cfg);
    }
    return result;
}

}  // namespace lava
