#include "lava/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lava {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

VideoMeta VideoMeta::make(int frame_count, double frame_rate,
                          std::int64_t audio_sample_count,
                          double audio_sample_rate) {
    VideoMeta meta;
    meta.frame_count = frame_count;
    meta.frame_rate = frame_rate;
    meta.audio_sample_count = audio_sample_count;
    meta.audio_sample_rate = audio_sample_rate;
    meta.nominal_duration = static_cast<double>(frame_count) / frame_rate;
    meta.validate();
    return meta;
}

void VideoMeta::validate() const {
    require(frame_count >= 1, "VideoMeta: frame_count must be >= 1");
    require(frame_rate > 0.0, "VideoMeta: frame_rate must be positive");
    require(audio_sample_count >= 0, "VideoMeta: audio_sample_count must be >= 0");
    require(audio_sample_rate > 0.0, "VideoMeta: audio_sample_rate must be positive");
    const double expected = static_cast<double>(frame_count) / frame_rate;
    require(std::abs(nominal_duration - expected) <= 1e-9,
            "VideoMeta: nominal_duration inconsistent with frame_count/frame_rate");
}

ScoreSequence ScoreSequence::make(Modality modality, std::vector<double> values) {
    ScoreSequence seq;
    seq.modality = modality;
    seq.values = std::move(values);
    seq.validate();
    return seq;
}

void ScoreSequence::validate() const {
    for (double v : values) {
        require(v >= 0.0 && v <= 1.0,
                "ScoreSequence: value " + std::to_string(v) + " outside [0,1]");
    }
}

FrameLabels FrameLabels::make(std::vector<std::uint8_t> values) {
    FrameLabels labels;
    labels.values = std::move(values);
    labels.validate();
    return labels;
}

void FrameLabels::validate() const {
    for (auto v : values) {
        require(v == 0 || v == 1, "FrameLabels: entries must be 0 or 1");
    }
}

TamperMap TamperMap::make(int height, int width, std::vector<double> values) {
    TamperMap map;
    map.height = height;
    map.width = width;
    map.values = std::move(values);
    map.validate();
    return map;
}

void TamperMap::validate() const {
    require(height > 0 && width > 0, "TamperMap: dimensions must be positive");
    require(values.size() == static_cast<std::size_t>(height) * width,
            "TamperMap: value count does not match dimensions");
    for (double v : values) {
        require(v >= 0.0 && v <= 1.0, "TamperMap: value outside [0,1]");
    }
}

void VideoRecord::validate() const {
    meta.validate();
    visual.validate();
    audio.validate();
    labels.validate();
    require(visual.modality == Modality::kVisual, "VideoRecord: visual modality mismatch");
    require(audio.modality == Modality::kAudio, "VideoRecord: audio modality mismatch");
    const auto t = static_cast<std::size_t>(meta.frame_count);
    require(visual.values.size() == t, "VideoRecord: visual length != frame_count");
    require(audio.values.size() == t, "VideoRecord: audio length != frame_count");
    require(labels.values.size() == t, "VideoRecord: labels length != frame_count");
    if (!maps.empty()) {
        require(maps.size() == t, "VideoRecord: maps length != frame_count");
        for (const auto& m : maps) m.validate();
    }
}

std::vector<TamperInterval> labels_to_intervals(const FrameLabels& labels) {
    std::vector<TamperInterval> out;
    const int n = static_cast<int>(labels.values.size());
    int start = -1;
    for (int t = 0; t < n; ++t) {
        if (labels.values[t] == 1 && start < 0) start = t;
        if (labels.values[t] == 0 && start >= 0) {
            out.push_back({start, t});
            start = -1;
        }
    }
    if (start >= 0) out.push_back({start, n});
    return out;
}

FrameLabels intervals_to_labels(const std::vector<TamperInterval>& intervals,
                                int frame_count) {
    require(frame_count >= 0, "intervals_to_labels: negative frame_count");
    std::vector<std::uint8_t> values(static_cast<std::size_t>(frame_count), 0);
    for (const auto& iv : intervals) {
        require(iv.start_frame >= 0 && iv.start_frame < iv.end_frame &&
                    iv.end_frame <= frame_count,
                "intervals_to_labels: interval [" + std::to_string(iv.start_frame) +
                    "," + std::to_string(iv.end_frame) + ") out of range for " +
                    std::to_string(frame_count) + " frames");
        for (int t = iv.start_frame; t < iv.end_frame; ++t) {
            require(values[static_cast<std::size_t>(t)] == 0,
                    "intervals_to_labels: overlapping intervals at frame " +
                        std::to_string(t));
            values[static_cast<std::size_t>(t)] = 1;
        }
    }
    FrameLabels labels;
    labels.values = std::move(values);
    return labels;
}

}  // namespace lava
