#include <doctest.h>

#include <stdexcept>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "lava/io.hpp"

using namespace lava;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;

    TempDir() {
        path = fs::temp_directory_path() /
               ("lava-io-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

GenConfig tiny_config() {
    GenConfig cfg;
    cfg.seed = 3;
    cfg.video_count = 8;
    cfg.frames_per_video = 60;
    return cfg;
}

}  // namespace

TEST_CASE("format_double round-trips arbitrary doubles") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double x = uniform(rng);
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(0.05) == "0.05");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("benchmark files round-trip exactly") {
    TempDir dir;
    const auto cfg = tiny_config();
    const auto videos = generate_benchmark(cfg);
    write_benchmark(dir.path, videos, cfg);
    const auto loaded = read_benchmark(dir.path);
    REQUIRE(loaded.size() == videos.size());
    for (std::size_t i = 0; i < videos.size(); ++i) {
        CHECK(loaded[i].record.id == videos[i].record.id);
        CHECK(loaded[i].scenario == videos[i].scenario);
        CHECK(loaded[i].record.visual.values == videos[i].record.visual.values);
        CHECK(loaded[i].record.audio.values == videos[i].record.audio.values);
        CHECK(loaded[i].record.labels.values == videos[i].record.labels.values);
        CHECK(loaded[i].record.meta.audio_sample_count ==
              videos[i].record.meta.audio_sample_count);
        CHECK(loaded[i].record.meta.frame_rate == videos[i].record.meta.frame_rate);
    }
}

TEST_CASE("benchmark writes are byte-identical across runs") {
    TempDir a;
    TempDir b;
    const auto cfg = tiny_config();
    write_benchmark(a.path, generate_benchmark(cfg), cfg);
    write_benchmark(b.path, generate_benchmark(cfg), cfg);
    CHECK(slurp(a.path / "manifest.txt") == slurp(b.path / "manifest.txt"));
    CHECK(slurp(a.path / "vid00000.csv") == slurp(b.path / "vid00000.csv"));
    CHECK(slurp(a.path / "vid00007.csv") == slurp(b.path / "vid00007.csv"));
}

TEST_CASE("score file schema errors carry line numbers") {
    TempDir dir;
    const auto cfg = tiny_config();
    write_benchmark(dir.path, generate_benchmark(cfg), cfg);
    {
        std::ofstream patch(dir.path / "vid00001.csv", std::ios::app);
        patch << "vid00001,notanumber,0.1,0.2,0\n";
    }
    try {
        read_benchmark(dir.path);
        FAIL("expected a schema error");
    } catch (const std::runtime_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("line 62") != std::string::npos);
    }
}

TEST_CASE("report rows round-trip") {
    TempDir dir;
    const std::vector<ReportRow> rows{
        {"clean", "lava", 1.0, 0.9875, 0.001220703125, 0.0},
        {"jpeg-q23", "naive", 0.59375, 0.25, 0.4375, 1.0},
    };
    const auto path = dir.path / "report.csv";
    write_report_csv(path, rows);
    const auto loaded = read_report_csv(path);
    REQUIRE(loaded.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(loaded[i].condition == rows[i].condition);
        CHECK(loaded[i].variant == rows[i].variant);
        CHECK(loaded[i].ap == rows[i].ap);
        CHECK(loaded[i].temporal_iou == rows[i].temporal_iou);
        CHECK(loaded[i].ece == rows[i].ece);
        CHECK(loaded[i].fpr == rows[i].fpr);
    }
}

TEST_CASE("fused frame files round-trip through the evaluate reader") {
    TempDir dir;
    const auto cfg = tiny_config();
    const auto benchmark = generate_benchmark(cfg);
    PipelineConfig config;
    SplitSpec split;
    ConditionRequest request{"clean", {}, variant_spec(Variant::kLava)};
    const auto outcome = run_condition(benchmark, request, config, split);

    const auto path = dir.path / "fused_clean__lava_frames.csv";
    write_fused_frames(path, outcome);
    const auto loaded = read_fused_frames(path);
    REQUIRE(loaded.size() == outcome.videos.size());
    for (std::size_t i = 0; i < loaded.size(); ++i) {
        CHECK(loaded[i].video_id == outcome.videos[i].distorted.id);
        CHECK(loaded[i].visual == outcome.videos[i].distorted.visual.values);
        CHECK(loaded[i].audio == outcome.videos[i].distorted.audio.values);
        CHECK(loaded[i].fused == outcome.videos[i].fused);
        CHECK(loaded[i].calibrated == outcome.videos[i].calibrated);
        CHECK(loaded[i].labels == outcome.videos[i].distorted.labels.values);
    }

    write_fused_videos(dir.path / "fused_clean__lava_videos.csv", outcome);
    const auto video_rows = slurp(dir.path / "fused_clean__lava_videos.csv");
    CHECK(video_rows.find("video_id,gate_g,visual_mean,delta_star,temperature") !=
          std::string::npos);
}

TEST_CASE("run manifest round-trips and validates stages") {
    TempDir dir;
    RunManifest manifest;
    manifest.benchmark = tiny_config();
    manifest.benchmark.scenario_mix = ScenarioMix::kJointOnly;
    manifest.split.oracle = false;
    manifest.split.validation_ratio = 0.25;
    manifest.split.seed = 11;
    manifest.pipeline.gate.tau = 0.2;
    manifest.pipeline.confidence.half_window = 4;
    manifest.pipeline.calibration.grid_size = 120;
    manifest.variants = {"naive", "lava"};
    manifest.conditions = {
        {"clean", {}},
        {"jpeg-q23", {Distortion::compression_collapse(0.85, 0.2)}},
        {"shifted", {Distortion::av_offset(0.5)}},
    };
    manifest.output_dir = "results";

    const auto path = dir.path / "run.json";
    save_run_manifest(path, manifest);
    const auto loaded = load_run_manifest(path);
    CHECK(loaded.benchmark.seed == manifest.benchmark.seed);
    CHECK(loaded.benchmark.scenario_mix == ScenarioMix::kJointOnly);
    CHECK(loaded.split.oracle == false);
    CHECK(loaded.split.validation_ratio == 0.25);
    CHECK(loaded.pipeline.gate.tau == 0.2);
    CHECK(loaded.pipeline.confidence.half_window == 4);
    CHECK(loaded.pipeline.calibration.grid_size == 120);
    CHECK(loaded.variants == manifest.variants);
    REQUIRE(loaded.conditions.size() == 3);
    CHECK(loaded.conditions[1].distortions[0].kind ==
          Distortion::Kind::kCompressionCollapse);
    CHECK(loaded.conditions[1].distortions[0].amount == 0.85);
    CHECK(loaded.conditions[2].distortions[0].amount == 0.5);
    CHECK(loaded.output_dir == "results");
}

TEST_CASE("manifests that reorder pipeline stages are rejected") {
    TempDir dir;
    const auto path = dir.path / "bad.json";
    {
        std::ofstream out(path);
        out << R"({"stage_order": ["gate", "stretch", "offset", "fusion", "calibration"]})";
    }
    CHECK_THROWS_AS(load_run_manifest(path), std::runtime_error);

    const auto good = dir.path / "good.json";
    {
        std::ofstream out(good);
        out << R"({"stage_order": ["stretch", "gate", "offset", "fusion", "calibration"]})";
    }
    CHECK_NOTHROW(load_run_manifest(good));
}

TEST_CASE("manifest presets expand to distortions") {
    TempDir dir;
    const auto path = dir.path / "preset.json";
    {
        std::ofstream out(path);
        out << R"({"conditions": [{"label": "jpeg",
                   "distortions": [{"preset": "jpeg-q23", "noise_std": 0.2}]}]})";
    }
    const auto manifest = load_run_manifest(path);
    REQUIRE(manifest.conditions.size() == 1);
    CHECK(manifest.conditions[0].distortions[0].amount == 0.85);
    CHECK(manifest.conditions[0].distortions[0].noise_std == 0.2);
}
