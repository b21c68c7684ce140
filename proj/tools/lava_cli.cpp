// Command-line harness: benchmark simulation, fusion runs, metric reports,
// scripted table reproduction, and attribution.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lava/io.hpp"
#include "lava/metrics.hpp"
#include "lava/pipeline.hpp"
#include "lava/reproduce.hpp"

namespace fs = std::filesystem;

namespace {

lava::RunManifest load_or_default(const std::string& path) {
    if (path.empty()) return lava::RunManifest{};
    return lava::load_run_manifest(path);
}

const lava::ConditionSpec& find_condition(const lava::RunManifest& manifest,
                                          const std::string& label) {
    for (const auto& c : manifest.conditions) {
        if (c.label == label) return c;
    }
    throw std::runtime_error("condition '" + label + "' not in manifest");
}

int cmd_simulate(const std::string& manifest_path, const std::string& output,
                 std::uint64_t seed_override, bool has_seed) {
    auto manifest = load_or_default(manifest_path);
    if (has_seed) manifest.benchmark.seed = seed_override;
    const fs::path dir = output.empty() ? manifest.output_dir : output;
    const auto videos = lava::generate_benchmark(manifest.benchmark);
    lava::write_benchmark(dir, videos, manifest.benchmark);
    std::cout << "wrote " << videos.size() << " score files to " << dir.string()
              << "\n";
    return 0;
}

int cmd_fuse(const std::string& manifest_path, const std::string& input,
             const std::string& condition, const std::string& variant_name,
             const std::string& output) {
    auto manifest = load_or_default(manifest_path);
    const fs::path out_dir = output.empty() ? manifest.output_dir : output;
    fs::create_directories(out_dir);
    const auto benchmark = lava::read_benchmark(input);
    const auto& cond = find_condition(manifest, condition);
    const lava::Variant variant = lava::variant_from_string(variant_name);

    lava::ConditionRequest request{cond.label, cond.distortions,
                                   lava::variant_spec(variant)};
    const bool with_attribution = variant == lava::Variant::kLava;
    const auto outcome =
        lava::run_condition(benchmark, request, manifest.pipeline, manifest.split,
                            with_attribution, manifest.attribution);

    const std::string stem = "fused_" + cond.label + "__" + variant_name;
    lava::write_fused_frames(out_dir / (stem + "_frames.csv"), outcome);
    lava::write_fused_videos(out_dir / (stem + "_videos.csv"), outcome);
    std::cout << "condition=" << cond.label << " variant=" << variant_name
              << " ap=" << lava::format_double(outcome.report.ap)
              << " iou=" << lava::format_double(outcome.report.temporal_iou)
              << " ece=" << lava::format_double(outcome.report.ece)
              << " fpr=" << lava::format_double(outcome.report.fpr) << "\n";
    return 0;
}

std::pair<std::string, std::string> parse_fused_name(const fs::path& path) {
    // fused_<condition>__<variant>_frames.csv
    std::string stem = path.stem().string();
    const std::string prefix = "fused_";
    const std::string suffix = "_frames";
    std::string condition = stem;
    std::string variant;
    if (stem.size() > suffix.size() &&
        stem.substr(stem.size() - suffix.size()) == suffix) {
        stem = stem.substr(0, stem.size() - suffix.size());
    }
    if (stem.rfind(prefix, 0) == 0) stem = stem.substr(prefix.size());
    const auto sep = stem.find("__");
    if (sep != std::string::npos) {
        condition = stem.substr(0, sep);
        variant = stem.substr(sep + 2);
    } else {
        condition = stem;
    }
    return {condition, variant};
}

int cmd_evaluate(const std::vector<std::string>& fused_files,
                 const std::string& output, int bin_count, double iou_threshold,
                 double decision_threshold) {
    std::vector<lava::ReportRow> rows;
    for (const auto& file : fused_files) {
        const auto videos = lava::read_fused_frames(file);
        std::vector<double> pooled;
        std::vector<std::uint8_t> pooled_labels;
        std::vector<double> ious;
        std::vector<lava::ScoredVideo> scored;
        for (const auto& v : videos) {
            pooled.insert(pooled.end(), v.calibrated.begin(), v.calibrated.end());
            pooled_labels.insert(pooled_labels.end(), v.labels.begin(),
                                 v.labels.end());
            ious.push_back(lava::temporal_iou(v.calibrated, v.labels, iou_threshold));
            scored.push_back({v.calibrated, v.labels});
        }
        lava::ReportRow row;
        std::tie(row.condition, row.variant) = parse_fused_name(file);
        row.ap = lava::average_precision(pooled, pooled_labels);
        row.ece = lava::expected_calibration_error(pooled, pooled_labels, bin_count);
        double iou_sum = 0.0;
        for (double v : ious) iou_sum += v;
        row.temporal_iou = iou_sum / static_cast<double>(ious.size());
        row.fpr = lava::false_positive_rate(scored, decision_threshold);
        rows.push_back(std::move(row));
    }
    lava::write_report_csv(output, rows);
    std::cout << "wrote " << rows.size() << " report rows to " << output << "\n";
    return 0;
}

int cmd_reproduce(const std::string& table, std::uint64_t seed,
                  const std::string& output) {
    const auto id = lava::table_id_from_string(table);
    const auto result = lava::reproduce_table(id, seed);
    fs::create_directories(output);
    const fs::path report_path =
        fs::path(output) / ("report_" + std::string(lava::to_string(id)) + ".csv");
    lava::write_report_csv(report_path, result.rows);
    for (const auto& row : result.rows) {
        std::cout << row.condition << " / " << row.variant
                  << ": ap=" << lava::format_double(row.ap)
                  << " iou=" << lava::format_double(row.temporal_iou)
                  << " ece=" << lava::format_double(row.ece)
                  << " fpr=" << lava::format_double(row.fpr) << "\n";
    }
    int failures = 0;
    for (const auto& check : result.checks) {
        std::cout << (check.passed ? "[PASS] " : "[FAIL] ") << lava::to_string(id)
                  << " " << check.name << " (" << check.detail << ")\n";
        failures += check.passed ? 0 : 1;
    }
    std::cout << "report: " << report_path.string() << "\n";
    return failures == 0 ? 0 : 1;
}

int cmd_attribute(const std::string& manifest_path, const std::string& input,
                  const std::string& condition, const std::string& output) {
    auto manifest = load_or_default(manifest_path);
    const auto benchmark = lava::read_benchmark(input);
    const auto& cond = find_condition(manifest, condition);
    lava::ConditionRequest request{cond.label, cond.distortions,
                                   lava::variant_spec(lava::Variant::kLava)};
    const auto outcome =
        lava::run_condition(benchmark, request, manifest.pipeline, manifest.split,
                            true, manifest.attribution);

    std::ofstream out(output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + output);
    out << "video_id,scenario,verdict,visual_evidence,audio_evidence,low_confidence\n";
    std::size_t correct = 0;
    for (const auto& v : outcome.videos) {
        out << v.distorted.id << ',' << lava::to_string(v.scenario) << ','
            << lava::to_string(v.verdict.label) << ','
            << lava::format_double(v.verdict.visual_segment_mean) << ','
            << lava::format_double(v.verdict.audio_segment_mean) << ','
            << (v.verdict.low_confidence ? 1 : 0) << "\n";
        const bool match =
            (v.scenario == lava::TamperScenario::kAuthentic &&
             v.verdict.label == lava::AttributionLabel::kAuthentic) ||
            (v.scenario == lava::TamperScenario::kVisualOnly &&
             v.verdict.label == lava::AttributionLabel::kFaceSwap) ||
            (v.scenario == lava::TamperScenario::kAudioOnly &&
             v.verdict.label == lava::AttributionLabel::kVoiceClone) ||
            (v.scenario == lava::TamperScenario::kJoint &&
             v.verdict.label == lava::AttributionLabel::kJointDeepfake);
        correct += match ? 1 : 0;
    }
    std::cout << "attribution accuracy: "
              << lava::format_double(static_cast<double>(correct) /
                                     static_cast<double>(outcome.videos.size()))
              << " over " << outcome.videos.size() << " videos\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Layered audio-visual watermark-score fusion harness"};
    app.require_subcommand(1);

    std::string manifest_path;
    std::string input;
    std::string output;
    std::string condition = "clean";
    std::string variant = "lava";
    std::string table = "T1";
    std::uint64_t seed = 0;
    std::vector<std::string> fused_files;
    int bin_count = 10;
    double iou_threshold = 0.5;
    double decision_threshold = 0.5;

    auto* sim = app.add_subcommand("simulate", "Generate a synthetic benchmark");
    sim->add_option("manifest", manifest_path, "Run manifest (JSON)");
    sim->add_option("--output", output, "Output directory");
    auto* seed_opt = sim->add_option("--seed", seed, "Override benchmark seed");

    auto* fuse = app.add_subcommand("fuse", "Run a pipeline variant");
    fuse->add_option("manifest", manifest_path, "Run manifest (JSON)");
    fuse->add_option("--input", input, "Benchmark directory")->required();
    fuse->add_option("--condition", condition, "Condition label from the manifest");
    fuse->add_option("--variant", variant,
                     "lava|naive|visual-only|audio-only|offset-only|offset-gate");
    fuse->add_option("--output", output, "Output directory");

    auto* eval = app.add_subcommand("evaluate", "Compute metric rows from fused files");
    eval->add_option("fused", fused_files, "fused_*_frames.csv files")->required();
    eval->add_option("--output", output, "Report CSV path")->required();
    eval->add_option("--bins", bin_count, "ECE bin count");
    eval->add_option("--iou-threshold", iou_threshold, "Binarization threshold");
    eval->add_option("--decision-threshold", decision_threshold,
                     "Video-level flag threshold");

    auto* repro = app.add_subcommand("reproduce", "Run a scripted table experiment");
    repro->add_option("--table", table, "T1|T2|T3a|T3b|T4a")->required();
    repro->add_option("--seed", seed, "Benchmark seed");
    repro->add_option("--output", output, "Output directory")->required();

    auto* attr = app.add_subcommand("attribute", "Classify manipulation types");
    attr->add_option("manifest", manifest_path, "Run manifest (JSON)");
    attr->add_option("--input", input, "Benchmark directory")->required();
    attr->add_option("--condition", condition, "Condition label from the manifest");
    attr->add_option("--output", output, "Verdict CSV path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            return cmd_simulate(manifest_path, output, seed, seed_opt->count() > 0);
        }
        if (fuse->parsed()) {
            return cmd_fuse(manifest_path, input, condition, variant, output);
        }
        if (eval->parsed()) {
            return cmd_evaluate(fused_files, output, bin_count, iou_threshold,
                                decision_threshold);
        }
        if (repro->parsed()) return cmd_reproduce(table, seed, output);
        if (attr->parsed()) return cmd_attribute(manifest_path, input, condition, output);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
