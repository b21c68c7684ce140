// Synthetic benchmark generation and score-level deployment distortions,
// standing in for real watermark detectors and codecs, plus the score
// aggregation entry points for externally supplied maps and sample vectors.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lava/model.hpp"

namespace lava {

// Which modalities a tampered video's segments manipulate.
enum class TamperScenario { kAuthentic, kVisualOnly, kAudioOnly, kJoint };

// Scenario assignment policy for tampered videos.
enum class ScenarioMix { kUniform, kJointOnly, kAudioOnly, kVisualOnly };

const char* to_string(TamperScenario s);
const char* to_string(ScenarioMix m);
ScenarioMix scenario_mix_from_string(const std::string& name);
TamperScenario tamper_scenario_from_string(const std::string& name);

struct GenConfig {
    std::uint64_t seed = 0;
    int video_count = 500;
    int frames_per_video = 300;
    double frame_rate = 25.0;
    double audio_sample_rate = 16000.0;
    std::pair<double, double> tamper_fraction_range{0.05, 0.30};
    double authentic_video_fraction = 0.2;
    double authentic_score_mean = 0.05;
    double tampered_score_mean = 0.95;
    double score_noise_std = 0.05;
    ScenarioMix scenario_mix = ScenarioMix::kUniform;
    // Tampered segments are placed at least this fraction of the video away
    // from either end, keeping evidence recoverable under shifts.
    double edge_margin_fraction = 0.1;

    void validate() const;
};

struct SimulatedVideo {
    VideoRecord record;
    TamperScenario scenario = TamperScenario::kAuthentic;
};

// Deterministic in the seed: every video derives its own RNG stream from
// (seed, video index), so results are identical however the loop is run.
std::vector<SimulatedVideo> generate_benchmark(const GenConfig& config);

namespace reference {
std::vector<SimulatedVideo> generate_benchmark_serial(const GenConfig& config);
}  // namespace reference

struct Distortion {
    enum class Kind { kStretch, kCompressionCollapse, kAvOffset, kAudioCollapse };

    Kind kind = Kind::kAvOffset;
    double amount = 0.0;     // stretch factor, collapse severity, or offset seconds
    double noise_std = 0.05; // collapse noise scale; unused by stretch/offset

    static Distortion stretch(double factor);
    static Distortion compression_collapse(double severity, double noise_std = 0.05);
    static Distortion av_offset(double delta_seconds);
    static Distortion audio_collapse(double severity, double noise_std = 0.05);

    void validate() const;
};

const char* to_string(Distortion::Kind k);
Distortion::Kind distortion_kind_from_string(const std::string& name);

// Named severity presets mapping codec-style conditions onto the simulator
// (labels only; no codec fidelity is implied).
Distortion distortion_from_preset(const std::string& name, double noise_std);

// Apply one distortion. Pure: the noise stream is derived from the record
// id and the distortion kind, never from severity, so different severities
// see the same draw. Labels and sequence lengths are never altered.
VideoRecord apply_distortion(const VideoRecord& record, const Distortion& d);

struct SampleVector {
    std::vector<double> values;  // per-sample watermark presence, high = present

    static SampleVector make(std::vector<double> values);
};

// Spatial mean of a tamper map.
double aggregate_visual(const TamperMap& map);

// 1 - mean watermark presence over the sample window of 1-based frame t;
// an empty window yields the neutral 0.5.
double aggregate_audio(const SampleVector& samples, const VideoMeta& meta,
                       int frame_index);

}  // namespace lava
