// Variant wiring and the per-condition evaluation engine: distort, run the
// staged pipeline per video, pool frames for AP/ECE, average IoU per video,
// and compute the video-level false positive rate.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lava/attribute.hpp"
#include "lava/calibrate.hpp"
#include "lava/fuse.hpp"
#include "lava/model.hpp"
#include "lava/simulate.hpp"

namespace lava {

enum class Variant {
    kLava,
    kNaive,
    kVisualOnly,
    kAudioOnly,
    kOffsetOnly,
    kOffsetPlusGate,
};

const char* to_string(Variant v);
Variant variant_from_string(const std::string& name);

struct VariantSpec {
    enum class Channel { kBoth, kVisualOnly, kAudioOnly };

    Channel channel = Channel::kBoth;
    bool stretch_correction = false;
    bool gate = false;
    bool offset_bank = false;
    bool confidence_fusion = false;
    bool calibration = false;
};

// Stage toggles for the named ablation variants. kLava enables everything;
// kNaive is the plain 0.5/0.5 average with no alignment, gate or calibration.
VariantSpec variant_spec(Variant v);

struct PipelineConfig {
    GateConfig gate;
    OffsetBank bank = OffsetBank::default_bank();
    ConfidenceConfig confidence;
    CalibrationConfig calibration;
    OffsetMeasure measure = OffsetMeasure::kOracleAp;
    double iou_threshold = 0.5;
    double decision_threshold = 0.5;
};

struct StageOutput {
    std::vector<double> fused;
    GateDecision gate;
    bool gate_evaluated = false;
    double delta_star = 0.0;
    bool offset_fallback = false;
};

// All stages except calibration, which pools frames across videos.
StageOutput run_video_stages(const VideoRecord& record, const VariantSpec& spec,
                             const PipelineConfig& config);

struct EvalReport {
    double ap = 0.0;
    double temporal_iou = 0.0;
    double ece = 0.0;
    double fpr = 0.0;
    std::string condition_label;
};

struct SplitSpec {
    bool oracle = true;          // fit and evaluate on the full set
    double validation_ratio = 0.3;
    std::uint64_t seed = 0;

    void validate() const;
};

struct ConditionRequest {
    std::string label;
    std::vector<Distortion> distortions;
    VariantSpec variant;
};

struct VideoResult {
    VideoRecord distorted;       // inputs as the pipeline saw them
    TamperScenario scenario = TamperScenario::kAuthentic;
    std::vector<double> fused;
    std::vector<double> calibrated;  // == fused for variants without calibration
    GateDecision gate;
    bool gate_evaluated = false;
    double delta_star = 0.0;
    bool offset_fallback = false;
    bool in_validation = false;
    bool has_verdict = false;
    AttributionVerdict verdict;
};

struct ConditionOutcome {
    EvalReport report;
    CalibrationModel calibration;  // identity model when the variant skips it
    std::vector<VideoResult> videos;
};

// Deterministic regardless of thread count: videos are processed into
// index-ordered slots and every reduction walks them in order.
ConditionOutcome run_condition(const std::vector<SimulatedVideo>& benchmark,
                               const ConditionRequest& request,
                               const PipelineConfig& config,
                               const SplitSpec& split,
                               bool with_attribution = false,
                               const AttributionConfig& attribution = {});

namespace reference {
ConditionOutcome run_condition_serial(const std::vector<SimulatedVideo>& benchmark,
                                      const ConditionRequest& request,
                                      const PipelineConfig& config,
                                      const SplitSpec& split,
                                      bool with_attribution = false,
                                      const AttributionConfig& attribution = {});
}  // namespace reference

}  // namespace lava
