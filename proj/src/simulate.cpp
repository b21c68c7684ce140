#include "lava/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "lava/align.hpp"

namespace lava {

const char* to_string(TamperScenario s) {
    switch (s) {
        case TamperScenario::kAuthentic: return "authentic";
        case TamperScenario::kVisualOnly: return "visual";
        case TamperScenario::kAudioOnly: return "audio";
        case TamperScenario::kJoint: return "joint";
    }
    return "authentic";
}

const char* to_string(ScenarioMix m) {
    switch (m) {
        case ScenarioMix::kUniform: return "uniform";
        case ScenarioMix::kJointOnly: return "joint";
        case ScenarioMix::kAudioOnly: return "audio";
        case ScenarioMix::kVisualOnly: return "visual";
    }
    return "uniform";
}

ScenarioMix scenario_mix_from_string(const std::string& name) {
    if (name == "uniform") return ScenarioMix::kUniform;
    if (name == "joint") return ScenarioMix::kJointOnly;
    if (name == "audio") return ScenarioMix::kAudioOnly;
    if (name == "visual") return ScenarioMix::kVisualOnly;
    throw std::invalid_argument("unknown scenario mix: " + name);
}

TamperScenario tamper_scenario_from_string(const std::string& name) {
    if (name == "authentic") return TamperScenario::kAuthentic;
    if (name == "visual") return TamperScenario::kVisualOnly;
    if (name == "audio") return TamperScenario::kAudioOnly;
    if (name == "joint") return TamperScenario::kJoint;
    throw std::invalid_argument("unknown tamper scenario: " + name);
}

void GenConfig::validate() const {
    if (video_count < 1) throw std::invalid_argument("GenConfig: video_count < 1");
    if (frames_per_video < 1) throw std::invalid_argument("GenConfig: frames_per_video < 1");
    if (frame_rate <= 0.0) throw std::invalid_argument("GenConfig: frame_rate <= 0");
    if (audio_sample_rate <= 0.0) throw std::invalid_argument("GenConfig: audio_sample_rate <= 0");
    const auto [lo, hi] = tamper_fraction_range;
    if (!(0.0 <= lo && lo <= hi && hi <= 1.0)) {
        throw std::invalid_argument("GenConfig: bad tamper_fraction_range");
    }
    if (hi * frames_per_video < 1.0) {
        throw std::invalid_argument(
            "GenConfig: tamper_fraction_range yields less than one frame");
    }
    if (authentic_video_fraction < 0.0 || authentic_video_fraction > 1.0) {
        throw std::invalid_argument("GenConfig: bad authentic_video_fraction");
    }
    for (double m : {authentic_score_mean, tampered_score_mean}) {
        if (m < 0.0 || m > 1.0) throw std::invalid_argument("GenConfig: mean outside [0,1]");
    }
    if (score_noise_std < 0.0) throw std::invalid_argument("GenConfig: negative noise std");
    if (edge_margin_fraction < 0.0 || edge_margin_fraction >= 0.5) {
        throw std::invalid_argument("GenConfig: edge_margin_fraction outside [0, 0.5)");
    }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    return h;
}

std::mt19937_64 video_stream(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(splitmix64(seed) ^ splitmix64(index + 1)));
}

std::string video_id(std::uint64_t seed, int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "vid%05d", index);
    (void)seed;
    return buf;
}

SimulatedVideo generate_one(const GenConfig& cfg, int index) {
    const int t_count = cfg.frames_per_video;
    auto rng = video_stream(cfg.seed, static_cast<std::uint64_t>(index));
    std::normal_distribution<double> unit_normal(0.0, 1.0);

    const int authentic_count = static_cast<int>(
        std::llround(cfg.authentic_video_fraction * cfg.video_count));
    const bool authentic = index < authentic_count;

    TamperScenario scenario = TamperScenario::kAuthentic;
    std::vector<std::uint8_t> labels(static_cast<std::size_t>(t_count), 0);
    if (!authentic) {
        switch (cfg.scenario_mix) {
            case ScenarioMix::kJointOnly: scenario = TamperScenario::kJoint; break;
            case ScenarioMix::kAudioOnly: scenario = TamperScenario::kAudioOnly; break;
            case ScenarioMix::kVisualOnly: scenario = TamperScenario::kVisualOnly; break;
            case ScenarioMix::kUniform: {
                std::uniform_int_distribution<int> pick(0, 2);
                const int k = pick(rng);
                scenario = k == 0   ? TamperScenario::kVisualOnly
                           : k == 1 ? TamperScenario::kAudioOnly
                                    : TamperScenario::kJoint;
                break;
            }
        }

        std::uniform_int_distribution<int> seg_count_dist(1, 2);
        int seg_count = seg_count_dist(rng);
        std::uniform_real_distribution<double> frac_dist(
            cfg.tamper_fraction_range.first, cfg.tamper_fraction_range.second);
        const int margin = std::max(
            1, static_cast<int>(std::llround(cfg.edge_margin_fraction * t_count)));
        const int usable = std::max(1, t_count - 2 * margin - 2);
        int total = static_cast<int>(std::llround(frac_dist(rng) * t_count));
        total = std::clamp(total, 1, usable);
        if (total < 2) seg_count = 1;

        std::vector<int> lengths;
        if (seg_count == 1) {
            lengths.push_back(total);
        } else {
            lengths.push_back(total / 2);
            lengths.push_back(total - total / 2);
        }
        std::vector<TamperInterval> placed;
        for (int len : lengths) {
            const int hi = t_count - margin - len;
            if (hi < margin) continue;
            std::uniform_int_distribution<int> pos_dist(margin, hi);
            for (int attempt = 0; attempt < 100; ++attempt) {
                const int start = pos_dist(rng);
                const bool clear = std::all_of(
                    placed.begin(), placed.end(), [&](const TamperInterval& iv) {
                        return start + len + 1 < iv.start_frame ||
                               start > iv.end_frame + 1;
                    });
                if (clear) {
                    placed.push_back({start, start + len});
                    break;
                }
            }
        }
        for (const auto& iv : placed) {
            for (int t = iv.start_frame; t < iv.end_frame; ++t) {
                labels[static_cast<std::size_t>(t)] = 1;
            }
        }
    }

    const bool manip_visual = scenario == TamperScenario::kVisualOnly ||
                              scenario == TamperScenario::kJoint;
    const bool manip_audio = scenario == TamperScenario::kAudioOnly ||
                             scenario == TamperScenario::kJoint;
    auto draw_channel = [&](bool manipulated) {
        std::vector<double> values(static_cast<std::size_t>(t_count));
        for (int t = 0; t < t_count; ++t) {
            const bool elevated = manipulated && labels[static_cast<std::size_t>(t)];
            const double mean =
                elevated ? cfg.tampered_score_mean : cfg.authentic_score_mean;
            values[static_cast<std::size_t>(t)] =
                std::clamp(mean + cfg.score_noise_std * unit_normal(rng), 0.0, 1.0);
        }
        return values;
    };
    std::vector<double> visual = draw_channel(manip_visual);
    std::vector<double> audio = draw_channel(manip_audio);

    SimulatedVideo out;
    out.scenario = scenario;
    out.record.id = video_id(cfg.seed, index);
    out.record.meta = VideoMeta::make(
        t_count, cfg.frame_rate,
        std::llround(t_count / cfg.frame_rate * cfg.audio_sample_rate),
        cfg.audio_sample_rate);
    out.record.visual = ScoreSequence::make(Modality::kVisual, std::move(visual));
    out.record.audio = ScoreSequence::make(Modality::kAudio, std::move(audio));
    out.record.labels = FrameLabels::make(std::move(labels));
    out.record.validate();
    return out;
}

}  // namespace

std::vector<SimulatedVideo> generate_benchmark(const GenConfig& config) {
    config.validate();
    std::vector<SimulatedVideo> out(static_cast<std::size_t>(config.video_count));
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < config.video_count; ++i) {
        out[static_cast<std::size_t>(i)] = generate_one(config, i);
    }
    return out;
}

namespace reference {

std::vector<SimulatedVideo> generate_benchmark_serial(const GenConfig& config) {
    config.validate();
    std::vector<SimulatedVideo> out;
    out.reserve(static_cast<std::size_t>(config.video_count));
    for (int i = 0; i < config.video_count; ++i) {
        out.push_back(generate_one(config, i));
    }
    return out;
}

}  // namespace reference

Distortion Distortion::stretch(double factor) {
    Distortion d;
    d.kind = Kind::kStretch;
    d.amount = factor;
    d.validate();
    return d;
}

Distortion Distortion::compression_collapse(double severity, double noise_std) {
    Distortion d;
    d.kind = Kind::kCompressionCollapse;
    d.amount = severity;
    d.noise_std = noise_std;
    d.validate();
    return d;
}

Distortion Distortion::av_offset(double delta_seconds) {
    Distortion d;
    d.kind = Kind::kAvOffset;
    d.amount = delta_seconds;
    return d;
}

Distortion Distortion::audio_collapse(double severity, double noise_std) {
    Distortion d;
    d.kind = Kind::kAudioCollapse;
    d.amount = severity;
    d.noise_std = noise_std;
    d.validate();
    return d;
}

void Distortion::validate() const {
    switch (kind) {
        case Kind::kStretch:
            if (!(amount > 0.0)) {
                throw std::invalid_argument("Distortion: stretch factor must be > 0");
            }
            break;
        case Kind::kCompressionCollapse:
        case Kind::kAudioCollapse:
            if (amount < 0.0 || amount > 1.0) {
                throw std::invalid_argument("Distortion: severity outside [0,1]");
            }
            if (noise_std < 0.0) {
                throw std::invalid_argument("Distortion: negative noise std");
            }
            break;
        case Kind::kAvOffset:
            break;
    }
}

const char* to_string(Distortion::Kind k) {
    switch (k) {
        case Distortion::Kind::kStretch: return "stretch";
        case Distortion::Kind::kCompressionCollapse: return "compression";
        case Distortion::Kind::kAvOffset: return "offset";
        case Distortion::Kind::kAudioCollapse: return "audio-compression";
    }
    return "offset";
}

Distortion::Kind distortion_kind_from_string(const std::string& name) {
    if (name == "stretch") return Distortion::Kind::kStretch;
    if (name == "compression") return Distortion::Kind::kCompressionCollapse;
    if (name == "offset") return Distortion::Kind::kAvOffset;
    if (name == "audio-compression") return Distortion::Kind::kAudioCollapse;
    throw std::invalid_argument("unknown distortion kind: " + name);
}

Distortion distortion_from_preset(const std::string& name, double noise_std) {
    if (name == "jpeg-q23") return Distortion::compression_collapse(0.85, noise_std);
    if (name == "h264-crf23") return Distortion::compression_collapse(0.90, noise_std);
    if (name == "h264-crf28") return Distortion::compression_collapse(0.95, noise_std);
    if (name == "mp3-32k") return Distortion::audio_collapse(0.15, noise_std);
    throw std::invalid_argument("unknown distortion preset: " + name);
}

namespace {

// Collapse noise is keyed to the record and channel only, so severities
// share the draw and severity sweeps stay comparable frame by frame.
std::mt19937_64 collapse_stream(const std::string& record_id, bool audio_channel) {
    const std::uint64_t salt = audio_channel ? 0xA5A5A5A5A5A5A5A5ULL
                                             : 0x5A5A5A5A5A5A5A5AULL;
    return std::mt19937_64(splitmix64(fnv1a(record_id) ^ salt));
}

std::vector<double> collapse_channel(const std::vector<double>& values,
                                     double severity, double noise_std,
                                     std::mt19937_64 rng) {
    std::normal_distribution<double> unit_normal(0.0, 1.0);
    std::vector<double> out(values.size());
    for (std::size_t t = 0; t < values.size(); ++t) {
        const double eps = noise_std * unit_normal(rng);
        out[t] = std::clamp(
            (1.0 - severity) * values[t] + severity * (1.0 - eps), 0.0, 1.0);
    }
    return out;
}

}  // namespace

VideoRecord apply_distortion(const VideoRecord& record, const Distortion& d) {
    d.validate();
    VideoRecord out = record;
    switch (d.kind) {
        case Distortion::Kind::kStretch: {
            const int n = record.meta.frame_count;
            std::vector<double> remapped(static_cast<std::size_t>(n));
            for (int t = 0; t < n; ++t) {
                const int src = std::clamp(
                    static_cast<int>(std::floor(d.amount * t)), 0, n - 1);
                remapped[static_cast<std::size_t>(t)] =
                    record.audio.values[static_cast<std::size_t>(src)];
            }
            out.audio.values = std::move(remapped);
            // The duration ratio is the observable trace of the stretch.
            out.meta.audio_sample_count = std::llround(
                d.amount * static_cast<double>(record.meta.audio_sample_count));
            break;
        }
        case Distortion::Kind::kCompressionCollapse:
            out.visual.values =
                collapse_channel(record.visual.values, d.amount, d.noise_std,
                                 collapse_stream(record.id, false));
            break;
        case Distortion::Kind::kAudioCollapse:
            out.audio.values =
                collapse_channel(record.audio.values, d.amount, d.noise_std,
                                 collapse_stream(record.id, true));
            break;
        case Distortion::Kind::kAvOffset: {
            const int k = offset_to_frames(d.amount, record.meta.frame_rate);
            out.audio.values = shift_scores(record.audio.values, k);
            break;
        }
    }
    return out;
}

SampleVector SampleVector::make(std::vector<double> values) {
    for (double v : values) {
        if (v < 0.0 || v > 1.0) {
            throw std::invalid_argument("SampleVector: value outside [0,1]");
        }
    }
    SampleVector s;
    s.values = std::move(values);
    return s;
}

double aggregate_visual(const TamperMap& map) {
    map.validate();
    double sum = 0.0;
    for (double v : map.values) sum += v;
    return sum / static_cast<double>(map.values.size());
}

double aggregate_audio(const SampleVector& samples, const VideoMeta& meta,
                       int frame_index) {
    if (frame_index < 1 || frame_index > meta.frame_count) {
        throw std::invalid_argument("aggregate_audio: frame index out of range");
    }
    // Sample window of 1-based frame t: (t-1)/f <= n/f_s < t/f.
    const double lo = (frame_index - 1) / meta.frame_rate * meta.audio_sample_rate;
    const double hi = frame_index / meta.frame_rate * meta.audio_sample_rate;
    auto n_begin = static_cast<std::int64_t>(std::ceil(lo));
    auto n_end = static_cast<std::int64_t>(std::ceil(hi));  // exclusive
    n_begin = std::max<std::int64_t>(n_begin, 0);
    n_end = std::min<std::int64_t>(n_end, static_cast<std::int64_t>(samples.values.size()));
    if (n_begin >= n_end) return 0.5;  // no samples: maximally uninformative
    double sum = 0.0;
    for (std::int64_t n = n_begin; n < n_end; ++n) {
        sum += samples.values[static_cast<std::size_t>(n)];
    }
    return 1.0 - sum / static_cast<double>(n_end - n_begin);
}

}  // namespace lava
