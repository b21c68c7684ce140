// Core domain types shared by every pipeline stage: per-frame score
// sequences, ground-truth labels, media metadata, tamper intervals and
// pixel-level tamper maps. All types are immutable value types once
// constructed and safe to share across threads.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lava {

enum class Modality { kVisual, kAudio };

struct VideoMeta {
    int frame_count = 0;            // T
    double frame_rate = 0.0;        // f, frames/second
    std::int64_t audio_sample_count = 0;  // N
    double audio_sample_rate = 0.0; // f_s, samples/second
    double nominal_duration = 0.0;  // seconds, = T / f

    static VideoMeta make(int frame_count, double frame_rate,
                          std::int64_t audio_sample_count,
                          double audio_sample_rate);
    void validate() const;
};

struct ScoreSequence {
    Modality modality = Modality::kVisual;
    std::vector<double> values;  // tamper polarity: high = likely tampered

    static ScoreSequence make(Modality modality, std::vector<double> values);
    void validate() const;
};

struct FrameLabels {
    std::vector<std::uint8_t> values;  // 1 = tampered

    static FrameLabels make(std::vector<std::uint8_t> values);
    void validate() const;
};

// Half-open frame range [start_frame, end_frame).
struct TamperInterval {
    int start_frame = 0;
    int end_frame = 0;

    bool operator==(const TamperInterval&) const = default;
};

struct TamperMap {
    int height = 0;
    int width = 0;
    std::vector<double> values;  // row-major, length height*width, in [0,1]

    static TamperMap make(int height, int width, std::vector<double> values);
    void validate() const;
};

struct VideoRecord {
    std::string id;
    VideoMeta meta;
    ScoreSequence visual;
    ScoreSequence audio;
    FrameLabels labels;
    std::vector<TamperMap> maps;  // empty when no spatial maps are attached

    void validate() const;
};

// Maximal runs of 1s as sorted, disjoint half-open intervals.
std::vector<TamperInterval> labels_to_intervals(const FrameLabels& labels);

// Inverse of labels_to_intervals. Throws std::invalid_argument on
// overlapping or out-of-range intervals.
FrameLabels intervals_to_labels(const std::vector<TamperInterval>& intervals,
                                int frame_count);

}  // namespace lava
