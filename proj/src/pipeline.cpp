#include "lava/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "lava/align.hpp"
#include "lava/metrics.hpp"

namespace lava {

const char* to_string(Variant v) {
    switch (v) {
        case Variant::kLava: return "lava";
        case Variant::kNaive: return "naive";
        case Variant::kVisualOnly: return "visual-only";
        case Variant::kAudioOnly: return "audio-only";
        case Variant::kOffsetOnly: return "offset-only";
        case Variant::kOffsetPlusGate: return "offset-gate";
    }
    return "lava";
}

Variant variant_from_string(const std::string& name) {
    if (name == "lava") return Variant::kLava;
    if (name == "naive") return Variant::kNaive;
    if (name == "visual-only") return Variant::kVisualOnly;
    if (name == "audio-only") return Variant::kAudioOnly;
    if (name == "offset-only") return Variant::kOffsetOnly;
    if (name == "offset-gate") return Variant::kOffsetPlusGate;
    throw std::invalid_argument("unknown variant: " + name);
}

VariantSpec variant_spec(Variant v) {
    VariantSpec spec;
    switch (v) {
        case Variant::kLava:
            spec.stretch_correction = spec.gate = spec.offset_bank = true;
            spec.confidence_fusion = spec.calibration = true;
            break;
        case Variant::kNaive:
            break;
        case Variant::kVisualOnly:
            spec.channel = VariantSpec::Channel::kVisualOnly;
            break;
        case Variant::kAudioOnly:
            spec.channel = VariantSpec::Channel::kAudioOnly;
            break;
        case Variant::kOffsetOnly:
            spec.stretch_correction = spec.offset_bank = true;
            spec.confidence_fusion = true;
            break;
        case Variant::kOffsetPlusGate:
            spec.stretch_correction = spec.offset_bank = true;
            spec.confidence_fusion = spec.gate = true;
            break;
    }
    return spec;
}

void SplitSpec::validate() const {
    if (!(validation_ratio > 0.0 && validation_ratio < 1.0)) {
        throw std::invalid_argument("SplitSpec: validation_ratio outside (0,1)");
    }
}

StageOutput run_video_stages(const VideoRecord& record, const VariantSpec& spec,
                             const PipelineConfig& config) {
    const VideoRecord working =
        spec.stretch_correction ? correct_stretch(record) : record;

    StageOutput out;
    if (spec.channel == VariantSpec::Channel::kVisualOnly) {
        out.fused = working.visual.values;
        return out;
    }
    if (spec.channel == VariantSpec::Channel::kAudioOnly) {
        out.fused = working.audio.values;
        return out;
    }

    out.gate = reliability_gate(working.visual, config.gate);
    out.gate_evaluated = spec.gate;
    if (!spec.gate) out.gate.g = 0;

    if (spec.offset_bank) {
        auto selection =
            select_offset(working.audio, working.visual, working.labels, out.gate,
                          config.bank, working.meta, config.measure,
                          config.confidence);
        out.delta_star = selection.delta_star;
        out.offset_fallback = selection.fallback;
        out.fused = std::move(selection.fused);
        return out;
    }

    if (out.gate.g == 1) {
        out.fused = working.audio.values;
    } else if (spec.confidence_fusion) {
        out.fused = fuse_frames(working.audio.values, working.visual.values,
                                config.confidence);
    } else {
        out.fused.resize(working.audio.values.size());
        for (std::size_t t = 0; t < out.fused.size(); ++t) {
            out.fused[t] =
                0.5 * working.audio.values[t] + 0.5 * working.visual.values[t];
        }
    }
    return out;
}

namespace {

std::vector<bool> validation_mask(std::size_t n, const SplitSpec& split) {
    std::vector<bool> in_val(n, false);
    if (split.oracle) return in_val;
    split.validate();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(split.seed);
    for (std::size_t i = n; i > 1; --i) {  // Fisher-Yates
        std::uniform_int_distribution<std::size_t> pick(0, i - 1);
        std::swap(order[i - 1], order[pick(rng)]);
    }
    auto val_count = static_cast<std::size_t>(
        std::llround(split.validation_ratio * static_cast<double>(n)));
    val_count = std::clamp<std::size_t>(val_count, 1, n - 1);
    for (std::size_t i = 0; i < val_count; ++i) in_val[order[i]] = true;
    return in_val;
}

VideoResult process_video(const SimulatedVideo& video,
                          const ConditionRequest& request,
                          const PipelineConfig& config) {
    VideoResult result;
    result.scenario = video.scenario;
    result.distorted = video.record;
    for (const auto& d : request.distortions) {
        result.distorted = apply_distortion(result.distorted, d);
    }
    auto stages = run_video_stages(result.distorted, request.variant, config);
    result.fused = std::move(stages.fused);
    result.gate = stages.gate;
    result.gate_evaluated = stages.gate_evaluated;
    result.delta_star = stages.delta_star;
    result.offset_fallback = stages.offset_fallback;
    return result;
}

ConditionOutcome finalize(std::vector<VideoResult> videos,
                          const ConditionRequest& request,
                          const PipelineConfig& config,
                          const SplitSpec& split,
                          bool with_attribution,
                          const AttributionConfig& attribution) {
    ConditionOutcome outcome;
    const auto in_val = validation_mask(videos.size(), split);
    for (std::size_t i = 0; i < videos.size(); ++i) {
        videos[i].in_validation = in_val[i];
    }

    outcome.calibration = {1.0, 0.0};
    if (request.variant.calibration) {
        std::vector<double> fit_scores;
        std::vector<std::uint8_t> fit_labels;
        for (std::size_t i = 0; i < videos.size(); ++i) {
            if (!split.oracle && !in_val[i]) continue;
            const auto& v = videos[i];
            fit_scores.insert(fit_scores.end(), v.fused.begin(), v.fused.end());
            fit_labels.insert(fit_labels.end(), v.distorted.labels.values.begin(),
                              v.distorted.labels.values.end());
        }
        outcome.calibration =
            fit_temperature(fit_scores, fit_labels, config.calibration);
    }
    for (auto& v : videos) {
        v.calibrated = request.variant.calibration
                           ? apply_calibration(v.fused, outcome.calibration,
                                               config.calibration)
                           : v.fused;
    }

    if (with_attribution) {
        for (auto& v : videos) {
            FusionResult fusion;
            fusion.gate = v.gate;
            if (!v.gate_evaluated) fusion.gate.g = 0;
            const VideoRecord aligned = request.variant.stretch_correction
                                            ? correct_stretch(v.distorted)
                                            : v.distorted;
            v.verdict = attribute(aligned, fusion, v.calibrated, attribution);
            v.has_verdict = true;
        }
    }

    // Pooled frame metrics over the evaluation half of the split.
    std::vector<double> pooled;
    std::vector<std::uint8_t> pooled_labels;
    std::vector<double> ious;
    std::vector<ScoredVideo> scored;
    for (const auto& v : videos) {
        if (!split.oracle && v.in_validation) continue;
        pooled.insert(pooled.end(), v.calibrated.begin(), v.calibrated.end());
        pooled_labels.insert(pooled_labels.end(), v.distorted.labels.values.begin(),
                             v.distorted.labels.values.end());
        ious.push_back(temporal_iou(v.calibrated, v.distorted.labels.values,
                                    config.iou_threshold));
        scored.push_back({v.calibrated, v.distorted.labels.values});
    }
    outcome.report.condition_label = request.label;
    outcome.report.ap = average_precision(pooled, pooled_labels);
    outcome.report.ece = expected_calibration_error(pooled, pooled_labels,
                                                    config.calibration.bin_count);
    outcome.report.temporal_iou =
        std::accumulate(ious.begin(), ious.end(), 0.0) /
        static_cast<double>(ious.size());
    outcome.report.fpr = false_positive_rate(scored, config.decision_threshold);
    outcome.videos = std::move(videos);
    return outcome;
}

}  // namespace

ConditionOutcome run_condition(const std::vector<SimulatedVideo>& benchmark,
                               const ConditionRequest& request,
                               const PipelineConfig& config,
                               const SplitSpec& split,
                               bool with_attribution,
                               const AttributionConfig& attribution) {
    std::vector<VideoResult> videos(benchmark.size());
    const auto count = static_cast<std::int64_t>(benchmark.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        videos[static_cast<std::size_t>(i)] =
            process_video(benchmark[static_cast<std::size_t>(i)], request, config);
    }
    return finalize(std::move(videos), request, config, split, with_attribution,
                    attribution);
}

namespace reference {

ConditionOutcome run_condition_serial(const std::vector<SimulatedVideo>& benchmark,
                                      const ConditionRequest& request,
                                      const PipelineConfig& config,
                                      const SplitSpec& split,
                                      bool with_attribution,
                                      const AttributionConfig& attribution) {
    std::vector<VideoResult> videos(benchmark.size());
    for (std::size_t i = 0; i < benchmark.size(); ++i) {
        videos[i] = process_video(benchmark[i], request, config);
    }
    return finalize(std::move(videos), request, config, split, with_attribution,
                    attribution);
}

}  // namespace reference

}  // namespace lava
