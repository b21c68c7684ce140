// Compares the OpenMP kernels against their serial reference
// implementations: benchmark generation, per-condition pipeline fan-out,
// temperature-grid search, and mask closing.
#include <benchmark/benchmark.h>

#include <random>

#include "lava/calibrate.hpp"
#include "lava/pipeline.hpp"
#include "lava/reproduce.hpp"
#include "lava/simulate.hpp"
#include "lava/spatial.hpp"

namespace {

lava::GenConfig bench_gen_config(int videos) {
    lava::GenConfig cfg;
    cfg.seed = 7;
    cfg.video_count = videos;
    cfg.frames_per_video = 300;
    cfg.scenario_mix = lava::ScenarioMix::kJointOnly;
    return cfg;
}

void BM_GenerateBenchmarkSerial(benchmark::State& state) {
    const auto cfg = bench_gen_config(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto videos = lava::reference::generate_benchmark_serial(cfg);
        benchmark::DoNotOptimize(videos);
    }
}
BENCHMARK(BM_GenerateBenchmarkSerial)->Arg(128)->Unit(benchmark::kMillisecond);

void BM_GenerateBenchmarkParallel(benchmark::State& state) {
    const auto cfg = bench_gen_config(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto videos = lava::generate_benchmark(cfg);
        benchmark::DoNotOptimize(videos);
    }
}
BENCHMARK(BM_GenerateBenchmarkParallel)->Arg(128)->Unit(benchmark::kMillisecond);

struct ConditionFixture {
    std::vector<lava::SimulatedVideo> benchmark;
    lava::ConditionRequest request;
    lava::PipelineConfig config;
    lava::SplitSpec split;

    ConditionFixture() {
        benchmark = lava::generate_benchmark(bench_gen_config(96));
        request = {"jpeg-q23",
                   {lava::Distortion::compression_collapse(0.85, 0.2)},
                   lava::variant_spec(lava::Variant::kLava)};
    }
};

void BM_RunConditionSerial(benchmark::State& state) {
    ConditionFixture fx;
    for (auto _ : state) {
        auto outcome = lava::reference::run_condition_serial(
            fx.benchmark, fx.request, fx.config, fx.split);
        benchmark::DoNotOptimize(outcome);
    }
}
BENCHMARK(BM_RunConditionSerial)->Unit(benchmark::kMillisecond);

void BM_RunConditionParallel(benchmark::State& state) {
    ConditionFixture fx;
    for (auto _ : state) {
        auto outcome =
            lava::run_condition(fx.benchmark, fx.request, fx.config, fx.split);
        benchmark::DoNotOptimize(outcome);
    }
}
BENCHMARK(BM_RunConditionParallel)->Unit(benchmark::kMillisecond);

struct CalibrationFixture {
    std::vector<double> fused;
    std::vector<std::uint8_t> labels;
    lava::CalibrationConfig config;

    explicit CalibrationFixture(std::size_t n) {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        fused.resize(n);
        labels.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            labels[i] = i % 5 == 0 ? 1 : 0;
            fused[i] = labels[i] ? 0.2 + 0.8 * uniform(rng) : 0.6 * uniform(rng);
        }
    }
};

void BM_FitTemperatureSerial(benchmark::State& state) {
    CalibrationFixture fx(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto model =
            lava::reference::fit_temperature_serial(fx.fused, fx.labels, fx.config);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_FitTemperatureSerial)->Arg(150000)->Unit(benchmark::kMillisecond);

void BM_FitTemperatureParallel(benchmark::State& state) {
    CalibrationFixture fx(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        auto model = lava::fit_temperature(fx.fused, fx.labels, fx.config);
        benchmark::DoNotOptimize(model);
    }
}
BENCHMARK(BM_FitTemperatureParallel)->Arg(150000)->Unit(benchmark::kMillisecond);

lava::BinaryMask random_mask(int side) {
    std::mt19937_64 rng(3);
    std::bernoulli_distribution bit(0.4);
    std::vector<std::uint8_t> values(static_cast<std::size_t>(side) * side);
    for (auto& v : values) v = bit(rng) ? 1 : 0;
    return lava::BinaryMask::make(side, side, std::move(values));
}

void BM_MorphologicalCloseSerial(benchmark::State& state) {
    const auto mask = random_mask(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto closed = lava::reference::morphological_close_serial(mask, 2);
        benchmark::DoNotOptimize(closed);
    }
}
BENCHMARK(BM_MorphologicalCloseSerial)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_MorphologicalCloseParallel(benchmark::State& state) {
    const auto mask = random_mask(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        auto closed = lava::morphological_close(mask, 2);
        benchmark::DoNotOptimize(closed);
    }
}
BENCHMARK(BM_MorphologicalCloseParallel)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
