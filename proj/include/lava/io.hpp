// File formats: per-video score CSVs, the key-value dataset manifest, the
// JSON run manifest, fused per-frame/per-video outputs, and report CSVs.
// All numeric fields round-trip exactly.
#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lava/attribute.hpp"
#include "lava/pipeline.hpp"
#include "lava/simulate.hpp"

namespace lava {

// Shortest decimal form that parses back to the identical double.
std::string format_double(double value);

struct ConditionSpec {
    std::string label;
    std::vector<Distortion> distortions;
};

struct RunManifest {
    GenConfig benchmark;
    SplitSpec split;
    PipelineConfig pipeline;
    AttributionConfig attribution;
    std::vector<std::string> variants{"lava"};
    std::vector<ConditionSpec> conditions{{"clean", {}}};
    std::string output_dir = "out";
};

// Throws std::runtime_error with a line/field diagnostic on schema errors,
// including manifests that list the pipeline stages out of order.
RunManifest load_run_manifest(const std::filesystem::path& path);
void save_run_manifest(const std::filesystem::path& path, const RunManifest& m);

// One score file per video plus a key-value dataset manifest; files are
// written in id order so identical inputs give byte-identical trees.
void write_benchmark(const std::filesystem::path& dir,
                     const std::vector<SimulatedVideo>& videos,
                     const GenConfig& config);
std::vector<SimulatedVideo> read_benchmark(const std::filesystem::path& dir);

struct ReportRow {
    std::string condition;
    std::string variant;
    double ap = 0.0;
    double temporal_iou = 0.0;
    double ece = 0.0;
    double fpr = 0.0;
};

void write_report_csv(const std::filesystem::path& path,
                      const std::vector<ReportRow>& rows);
std::vector<ReportRow> read_report_csv(const std::filesystem::path& path);

// Per-frame rows (video_id, frame, visual_score, audio_score, fused,
// calibrated_p, label) and per-video rows (gate, offset, temperature,
// attribution verdict and evidence).
void write_fused_frames(const std::filesystem::path& path,
                        const ConditionOutcome& outcome);
void write_fused_videos(const std::filesystem::path& path,
                        const ConditionOutcome& outcome);

struct FusedVideoFrames {
    std::string video_id;
    std::vector<double> visual;
    std::vector<double> audio;
    std::vector<double> fused;
    std::vector<double> calibrated;
    std::vector<std::uint8_t> labels;
};

std::vector<FusedVideoFrames> read_fused_frames(const std::filesystem::path& path);

}  // namespace lava
