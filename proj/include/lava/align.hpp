// Temporal alignment: stretch-factor estimation from observable durations,
// linear-interpolation resampling, and the clamped frame-shift operator used
// during offset search.
#pragma once

#include <span>
#include <vector>

#include "lava/model.hpp"

namespace lava {

// Dead-zone half-width around 1.0 below which stretch correction is skipped.
inline constexpr double kStretchTriggerThreshold = 0.01;

struct StretchEstimate {
    double alpha_hat = 1.0;
    bool triggered = false;
};

// alpha_hat = (audio duration) / (nominal video duration).
// Throws std::invalid_argument when either duration is zero.
StretchEstimate estimate_stretch(const VideoMeta& meta);

// Linear-interpolation resampling at rate ratio beta. Output length is
// round(input length / beta); positions past the last sample clamp to it.
std::vector<double> resample(std::span<const double> values, double beta);

// Same interpolation rule with an explicit output length.
std::vector<double> resample_to_length(std::span<const double> values,
                                       double beta, std::size_t out_length);

// Undo an estimated stretch on the audio score sequence. Outside the
// trigger dead-zone the record is returned unchanged; otherwise the audio
// is resampled by 1/alpha_hat back to frame_count samples and the metadata
// sample count is rescaled so re-estimation lands at 1.
VideoRecord correct_stretch(const VideoRecord& record);

// output[t] = input[clamp(t - delta_frames)]; length preserved.
std::vector<double> shift_scores(std::span<const double> values, int delta_frames);

// Round half away from zero, the convention used for seconds-to-frames
// offset conversion.
int round_half_away_from_zero(double x);

inline int offset_to_frames(double delta_seconds, double frame_rate) {
    return round_half_away_from_zero(delta_seconds * frame_rate);
}

}  // namespace lava
