#include <doctest.h>

#include <stdexcept>
#include <algorithm>
#include <cmath>

#include "lava/model.hpp"
#include "lava/simulate.hpp"

using namespace lava;

namespace {

bool records_equal(const VideoRecord& a, const VideoRecord& b) {
    return a.id == b.id && a.visual.values == b.visual.values &&
           a.audio.values == b.audio.values && a.labels.values == b.labels.values &&
           a.meta.audio_sample_count == b.meta.audio_sample_count;
}

GenConfig small_config() {
    GenConfig cfg;
    cfg.seed = 5;
    cfg.video_count = 40;
    cfg.frames_per_video = 120;
    return cfg;
}

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
    const auto a = generate_benchmark(small_config());
    const auto b = generate_benchmark(small_config());
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(records_equal(a[i].record, b[i].record));
        CHECK(a[i].scenario == b[i].scenario);
    }

    auto other = small_config();
    other.seed = 6;
    const auto c = generate_benchmark(other);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        any_diff = any_diff || a[i].record.visual.values != c[i].record.visual.values;
    }
    CHECK(any_diff);
}

TEST_CASE("all-authentic configuration stays below 0.5") {
    GenConfig cfg = small_config();
    cfg.authentic_video_fraction = 1.0;
    cfg.video_count = 30;
    const auto videos = generate_benchmark(cfg);
    for (const auto& v : videos) {
        CHECK(v.scenario == TamperScenario::kAuthentic);
        CHECK(std::all_of(v.record.labels.values.begin(), v.record.labels.values.end(),
                          [](std::uint8_t y) { return y == 0; }));
        for (double s : v.record.visual.values) CHECK(s < 0.5);
        for (double s : v.record.audio.values) CHECK(s < 0.5);
    }
}

TEST_CASE("degenerate noise pins tampered scores at the mean") {
    GenConfig cfg = small_config();
    cfg.authentic_video_fraction = 0.0;
    cfg.tampered_score_mean = 1.0;
    cfg.score_noise_std = 0.0;
    cfg.scenario_mix = ScenarioMix::kJointOnly;
    for (const auto& v : generate_benchmark(cfg)) {
        const auto runs = labels_to_intervals(v.record.labels);
        REQUIRE(!runs.empty());
        CHECK(runs.size() <= 2);
        for (std::size_t t = 0; t < v.record.labels.values.size(); ++t) {
            if (v.record.labels.values[t]) {
                CHECK(v.record.visual.values[t] == 1.0);
                CHECK(v.record.audio.values[t] == 1.0);
            }
        }
    }
}

TEST_CASE("scenario mix controls which channel is elevated") {
    GenConfig cfg = small_config();
    cfg.authentic_video_fraction = 0.0;
    cfg.score_noise_std = 0.0;
    cfg.scenario_mix = ScenarioMix::kAudioOnly;
    for (const auto& v : generate_benchmark(cfg)) {
        CHECK(v.scenario == TamperScenario::kAudioOnly);
        for (std::size_t t = 0; t < v.record.labels.values.size(); ++t) {
            if (v.record.labels.values[t]) {
                CHECK(v.record.audio.values[t] == cfg.tampered_score_mean);
                CHECK(v.record.visual.values[t] == cfg.authentic_score_mean);
            }
        }
    }
}

TEST_CASE("tamper fractions below one frame are rejected") {
    GenConfig cfg = small_config();
    cfg.frames_per_video = 10;
    cfg.tamper_fraction_range = {0.0, 0.05};
    CHECK_THROWS_AS(generate_benchmark(cfg), std::invalid_argument);
}

TEST_CASE("aggregate_visual is the spatial mean") {
    CHECK(aggregate_visual(TamperMap::make(4, 4, std::vector<double>(16, 0.0))) == 0.0);
    CHECK(aggregate_visual(TamperMap::make(2, 3, std::vector<double>(6, 1.0))) == 1.0);
    CHECK(aggregate_visual(TamperMap::make(2, 2, {1.0, 0.0, 0.0, 0.0})) ==
          doctest::Approx(0.25));
}

TEST_CASE("aggregate_audio follows the frame-aligned sample window") {
    const auto meta = VideoMeta::make(2, 2.0, 4, 4.0);
    const auto samples = SampleVector::make({1.0, 1.0, 0.0, 0.0});
    CHECK(aggregate_audio(samples, meta, 1) == doctest::Approx(0.0));
    CHECK(aggregate_audio(samples, meta, 2) == doctest::Approx(1.0));
    CHECK_THROWS_AS(aggregate_audio(samples, meta, 0), std::invalid_argument);
    CHECK_THROWS_AS(aggregate_audio(samples, meta, 3), std::invalid_argument);

    const auto full = SampleVector::make(std::vector<double>(16, 1.0));
    const auto meta2 = VideoMeta::make(4, 4.0, 16, 16.0);
    for (int t = 1; t <= 4; ++t) {
        CHECK(aggregate_audio(full, meta2, t) == doctest::Approx(0.0));
    }
    const auto none = SampleVector::make(std::vector<double>(16, 0.0));
    CHECK(aggregate_audio(none, meta2, 2) == doctest::Approx(1.0));
}

TEST_CASE("an empty sample window returns the neutral score") {
    // f_s/f < 1: frame 2 covers [0.1, 0.2) in sample units, no integers.
    const auto meta = VideoMeta::make(10, 10.0, 1, 1.0);
    const auto samples = SampleVector::make({1.0});
    CHECK(aggregate_audio(samples, meta, 2) == doctest::Approx(0.5));
}

namespace {

VideoRecord two_segment_record() {
    GenConfig cfg;
    cfg.seed = 9;
    cfg.video_count = 4;
    cfg.frames_per_video = 200;
    cfg.authentic_video_fraction = 0.0;
    cfg.scenario_mix = ScenarioMix::kJointOnly;
    cfg.score_noise_std = 0.02;
    return generate_benchmark(cfg)[1].record;
}

}  // namespace

TEST_CASE("distortions never touch labels or lengths") {
    const auto rec = two_segment_record();
    for (const auto& d :
         {Distortion::stretch(0.9), Distortion::compression_collapse(0.7, 0.1),
          Distortion::av_offset(0.5), Distortion::audio_collapse(0.3, 0.1)}) {
        const auto out = apply_distortion(rec, d);
        CHECK(out.labels.values == rec.labels.values);
        CHECK(out.visual.values.size() == rec.visual.values.size());
        CHECK(out.audio.values.size() == rec.audio.values.size());
    }
}

TEST_CASE("full collapse with zero noise saturates the channel") {
    const auto rec = two_segment_record();
    const auto out = apply_distortion(rec, Distortion::compression_collapse(1.0, 0.0));
    for (double v : out.visual.values) CHECK(v == 1.0);
    CHECK(out.audio.values == rec.audio.values);
}

TEST_CASE("zero offset is the identity") {
    const auto rec = two_segment_record();
    const auto out = apply_distortion(rec, Distortion::av_offset(0.0));
    CHECK(out.audio.values == rec.audio.values);
    CHECK(out.visual.values == rec.visual.values);
}

TEST_CASE("opposite offsets cancel on interior frames") {
    const auto rec = two_segment_record();
    const auto there = apply_distortion(rec, Distortion::av_offset(0.5));
    const auto back = apply_distortion(there, Distortion::av_offset(-0.5));
    const int n = rec.meta.frame_count;
    for (int t = 13; t <= n - 14; ++t) {
        CHECK(back.audio.values[static_cast<std::size_t>(t)] ==
              rec.audio.values[static_cast<std::size_t>(t)]);
    }
}

TEST_CASE("collapse severity is monotone under a shared noise draw") {
    const auto rec = two_segment_record();
    const auto lo = apply_distortion(rec, Distortion::compression_collapse(0.4, 0.0));
    const auto hi = apply_distortion(rec, Distortion::compression_collapse(0.8, 0.0));
    for (std::size_t t = 0; t < lo.visual.values.size(); ++t) {
        CHECK(hi.visual.values[t] >= lo.visual.values[t]);
    }
}

TEST_CASE("collapse noise draw is shared across severities") {
    // On an all-zero visual channel the collapse output divided by the
    // severity recovers the noise target; both severities must agree.
    auto rec = two_segment_record();
    std::fill(rec.visual.values.begin(), rec.visual.values.end(), 0.0);
    const auto a = apply_distortion(rec, Distortion::compression_collapse(0.5, 0.1));
    const auto b = apply_distortion(rec, Distortion::compression_collapse(0.25, 0.1));
    for (std::size_t t = 0; t < a.visual.values.size(); ++t) {
        if (a.visual.values[t] == 0.0 || a.visual.values[t] == 1.0) continue;
        CHECK(a.visual.values[t] / 0.5 ==
              doctest::Approx(b.visual.values[t] / 0.25).epsilon(1e-12));
    }
}

TEST_CASE("stretch rescales the observable audio duration") {
    const auto rec = two_segment_record();
    const auto out = apply_distortion(rec, Distortion::stretch(0.95));
    CHECK(out.meta.audio_sample_count ==
          std::llround(0.95 * static_cast<double>(rec.meta.audio_sample_count)));
    // remapped evidence reads from floor(alpha * t)
    const int t = 100;
    CHECK(out.audio.values[t] == rec.audio.values[95]);
}

TEST_CASE("severity presets") {
    CHECK(distortion_from_preset("jpeg-q23", 0.2).amount == doctest::Approx(0.85));
    CHECK(distortion_from_preset("h264-crf23", 0.2).amount == doctest::Approx(0.90));
    CHECK(distortion_from_preset("h264-crf28", 0.2).amount == doctest::Approx(0.95));
    CHECK(distortion_from_preset("mp3-32k", 0.4).kind ==
          Distortion::Kind::kAudioCollapse);
    CHECK_THROWS_AS(distortion_from_preset("vp9", 0.2), std::invalid_argument);
}
