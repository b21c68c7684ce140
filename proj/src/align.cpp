#include "lava/align.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lava {

int round_half_away_from_zero(double x) {
    return static_cast<int>(x >= 0.0 ? std::floor(x + 0.5) : std::ceil(x - 0.5));
}

StretchEstimate estimate_stretch(const VideoMeta& meta) {
    meta.validate();
    const double nominal = meta.nominal_duration;
    const double audio_duration =
        static_cast<double>(meta.audio_sample_count) / meta.audio_sample_rate;
    if (nominal <= 0.0) {
        throw std::invalid_argument("estimate_stretch: zero nominal duration");
    }
    if (audio_duration <= 0.0) {
        throw std::invalid_argument("estimate_stretch: zero audio duration");
    }
    StretchEstimate est;
    est.alpha_hat = audio_duration / nominal;
    est.triggered = std::abs(est.alpha_hat - 1.0) > kStretchTriggerThreshold;
    return est;
}

std::vector<double> resample_to_length(std::span<const double> values,
                                       double beta, std::size_t out_length) {
    if (values.empty()) {
        throw std::invalid_argument("resample: empty input");
    }
    if (!(beta > 0.0)) {
        throw std::invalid_argument("resample: ratio must be positive");
    }
    const std::size_t n = values.size();
    std::vector<double> out(out_length);
    for (std::size_t i = 0; i < out_length; ++i) {
        const double pos = static_cast<double>(i) * beta;
        if (pos >= static_cast<double>(n - 1)) {
            out[i] = values[n - 1];
            continue;
        }
        const auto k = static_cast<std::size_t>(pos);
        const double frac = pos - static_cast<double>(k);
        out[i] = (1.0 - frac) * values[k] + frac * values[k + 1];
    }
    return out;
}

std::vector<double> resample(std::span<const double> values, double beta) {
    if (values.empty()) {
        throw std::invalid_argument("resample: empty input");
    }
    if (!(beta > 0.0)) {
        throw std::invalid_argument("resample: ratio must be positive");
    }
    const auto out_length = static_cast<std::size_t>(
        std::llround(static_cast<double>(values.size()) / beta));
    return resample_to_length(values, beta, out_length);
}

VideoRecord correct_stretch(const VideoRecord& record) {
    const StretchEstimate est = estimate_stretch(record.meta);
    if (!est.triggered) return record;

    VideoRecord out = record;
    // The stretch remaps frame-level audio evidence; inverting it means
    // sampling the observed sequence at stride 1/alpha_hat while keeping
    // the sequence length pinned to frame_count.
    out.audio.values = resample_to_length(
        record.audio.values, 1.0 / est.alpha_hat,
        static_cast<std::size_t>(record.meta.frame_count));
    for (double& v : out.audio.values) v = std::clamp(v, 0.0, 1.0);
    out.meta.audio_sample_count = std::llround(
        static_cast<double>(record.meta.audio_sample_count) / est.alpha_hat);
    return out;
}

std::vector<double> shift_scores(std::span<const double> values, int delta_frames) {
    const int n = static_cast<int>(values.size());
    std::vector<double> out(values.size());
    for (int t = 0; t < n; ++t) {
        const int src = std::clamp(t - delta_frames, 0, n - 1);
        out[static_cast<std::size_t>(t)] = values[static_cast<std::size_t>(src)];
    }
    return out;
}

}  // namespace lava
