#include "lava/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lava/metrics.hpp"
#include "lava/pipeline.hpp"

namespace lava {

const char* to_string(TableId id) {
    switch (id) {
        case TableId::kT1: return "T1";
        case TableId::kT2: return "T2";
        case TableId::kT3a: return "T3a";
        case TableId::kT3b: return "T3b";
        case TableId::kT4a: return "T4a";
    }
    return "T1";
}

TableId table_id_from_string(const std::string& name) {
    if (name == "T1" || name == "t1") return TableId::kT1;
    if (name == "T2" || name == "t2") return TableId::kT2;
    if (name == "T3a" || name == "t3a") return TableId::kT3a;
    if (name == "T3b" || name == "t3b") return TableId::kT3b;
    if (name == "T4a" || name == "t4a") return TableId::kT4a;
    throw std::invalid_argument("unknown table id: " + name);
}

double spearman_correlation(const std::vector<double>& xs,
                            const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2) {
        throw std::invalid_argument("spearman_correlation: bad inputs");
    }
    auto ranks = [](const std::vector<double>& v) {
        std::vector<std::size_t> order(v.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
        std::vector<double> r(v.size());
        std::size_t i = 0;
        while (i < order.size()) {
            std::size_t j = i;
            while (j < order.size() && v[order[j]] == v[order[i]]) ++j;
            const double avg = 0.5 * static_cast<double>(i + j - 1) + 1.0;
            for (std::size_t k = i; k < j; ++k) r[order[k]] = avg;
            i = j;
        }
        return r;
    };
    const auto rx = ranks(xs);
    const auto ry = ranks(ys);
    return pearson_correlation(rx, ry);
}

namespace {

constexpr double kCollapseNoise = 0.20;

GenConfig base_config(std::uint64_t seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.video_count = 500;
    cfg.frames_per_video = 300;
    cfg.authentic_video_fraction = 0.2;
    cfg.scenario_mix = ScenarioMix::kJointOnly;
    return cfg;
}

struct Experiment {
    GenConfig gen;
    std::vector<ConditionSpec> conditions;
    // (variant label, spec) pairs; labels beyond the named variants cover
    // the with/without-alignment rows.
    std::vector<std::pair<std::string, VariantSpec>> variants;
};

VariantSpec raw_alignment_off() {
    VariantSpec spec = variant_spec(Variant::kLava);
    spec.stretch_correction = false;
    spec.offset_bank = false;
    return spec;
}

Experiment build_experiment(TableId id, std::uint64_t seed) {
    Experiment ex;
    ex.gen = table_benchmark(id, seed);
    auto named = [](Variant v) {
        return std::pair<std::string, VariantSpec>{to_string(v), variant_spec(v)};
    };
    switch (id) {
        case TableId::kT1: {
            ex.conditions.push_back({"clean", {}});
            ex.conditions.push_back(
                {"jpeg-q23",
                 {Distortion::compression_collapse(0.85, kCollapseNoise)}});
            ex.variants = {named(Variant::kVisualOnly), named(Variant::kAudioOnly),
                           named(Variant::kNaive), named(Variant::kLava)};
            break;
        }
        case TableId::kT2: {
            ex.conditions.push_back({"clean", {}});
            ex.conditions.push_back(
                {"jpeg-q23",
                 {Distortion::compression_collapse(0.85, kCollapseNoise)}});
            ex.conditions.push_back(
                {"h264-crf23",
                 {Distortion::compression_collapse(0.90, kCollapseNoise)}});
            ex.conditions.push_back(
                {"h264-crf28",
                 {Distortion::compression_collapse(0.95, kCollapseNoise)}});
            ex.variants = {named(Variant::kNaive), named(Variant::kOffsetOnly),
                           named(Variant::kOffsetPlusGate), named(Variant::kLava)};
            break;
        }
        case TableId::kT3a: {
            for (double d : {0.0, 0.25, 0.5, 0.75, 1.0, 2.0, 3.0}) {
                std::ostringstream label;
                label << "offset+" << d << "s";
                ex.conditions.push_back({label.str(), {Distortion::av_offset(d)}});
            }
            ex.variants = {named(Variant::kNaive), named(Variant::kLava)};
            break;
        }
        case TableId::kT3b: {
            for (double a : {0.90, 0.95, 1.05, 1.10}) {
                std::ostringstream label;
                label << "stretch-" << a << "x";
                ex.conditions.push_back({label.str(), {Distortion::stretch(a)}});
            }
            ex.variants = {{"raw", raw_alignment_off()},
                           {"corrected", variant_spec(Variant::kLava)}};
            break;
        }
        case TableId::kT4a: {
            const auto offset = Distortion::av_offset(0.5);
            const auto jpeg = Distortion::compression_collapse(0.85, kCollapseNoise);
            const auto mp3 = Distortion::audio_collapse(0.15, 0.40);
            const auto stretch = Distortion::stretch(0.95);
            ex.conditions.push_back({"clean+clean", {offset}});
            ex.conditions.push_back({"clean+mp3-32k", {offset, mp3}});
            ex.conditions.push_back({"clean+stretch-0.95", {stretch, offset}});
            ex.conditions.push_back({"jpeg+clean", {offset, jpeg}});
            ex.conditions.push_back({"jpeg+mp3-32k", {offset, mp3, jpeg}});
            ex.conditions.push_back({"jpeg+stretch-0.95", {stretch, offset, jpeg}});
            ex.variants = {named(Variant::kNaive), named(Variant::kLava)};
            break;
        }
    }
    return ex;
}

struct TableRuns {
    std::vector<ReportRow> rows;
    std::map<std::pair<std::string, std::string>, EvalReport> reports;
};

TableRuns run_experiment(const Experiment& ex) {
    const auto benchmark = generate_benchmark(ex.gen);
    PipelineConfig config;
    SplitSpec split;  // oracle: table rows are ablation ceilings
    TableRuns runs;
    for (const auto& cond : ex.conditions) {
        for (const auto& [variant_label, spec] : ex.variants) {
            ConditionRequest request{cond.label, cond.distortions, spec};
            const auto outcome = run_condition(benchmark, request, config, split);
            runs.reports[{cond.label, variant_label}] = outcome.report;
            runs.rows.push_back({cond.label, variant_label, outcome.report.ap,
                                 outcome.report.temporal_iou, outcome.report.ece,
                                 outcome.report.fpr});
        }
    }
    return runs;
}

void add_check(ReproduceResult& result, const std::string& name, bool passed,
               const std::string& detail) {
    result.checks.push_back({name, passed, detail});
    result.all_passed = result.all_passed && passed;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(4);
    os << std::fixed << v;
    return os.str();
}

}  // namespace

GenConfig table_benchmark(TableId id, std::uint64_t seed) {
    GenConfig cfg = base_config(seed);
    switch (id) {
        case TableId::kT1:
            cfg.score_noise_std = 0.03;
            break;
        case TableId::kT2:
            cfg.authentic_score_mean = 0.01;
            cfg.tampered_score_mean = 0.99;
            cfg.score_noise_std = 0.015;
            break;
        case TableId::kT3a:
            cfg.frames_per_video = 600;
            cfg.tamper_fraction_range = {0.03, 0.05};
            cfg.score_noise_std = 0.02;
            break;
        case TableId::kT3b:
            cfg.frames_per_video = 800;
            cfg.tamper_fraction_range = {0.01, 0.025};
            cfg.score_noise_std = 0.02;
            break;
        case TableId::kT4a:
            cfg.score_noise_std = 0.02;
            break;
    }
    return cfg;
}

ReproduceResult reproduce_table(TableId id, std::uint64_t seed) {
    const Experiment ex = build_experiment(id, seed);
    TableRuns runs = run_experiment(ex);
    ReproduceResult result;
    result.rows = std::move(runs.rows);
    const auto& rep = runs.reports;
    auto ap = [&](const std::string& c, const std::string& v) {
        return rep.at({c, v}).ap;
    };
    auto iou = [&](const std::string& c, const std::string& v) {
        return rep.at({c, v}).temporal_iou;
    };
    auto ece = [&](const std::string& c, const std::string& v) {
        return rep.at({c, v}).ece;
    };

    switch (id) {
        case TableId::kT1: {
            add_check(result, "clean lava AP >= 0.99", ap("clean", "lava") >= 0.99,
                      fmt(ap("clean", "lava")));
            add_check(result, "jpeg visual-only AP <= 0.60",
                      ap("jpeg-q23", "visual-only") <= 0.60,
                      fmt(ap("jpeg-q23", "visual-only")));
            add_check(result, "jpeg audio-only AP >= 0.99",
                      ap("jpeg-q23", "audio-only") >= 0.99,
                      fmt(ap("jpeg-q23", "audio-only")));
            add_check(result, "jpeg lava AP >= 0.99", ap("jpeg-q23", "lava") >= 0.99,
                      fmt(ap("jpeg-q23", "lava")));
            add_check(result, "jpeg lava IoU >= naive IoU",
                      iou("jpeg-q23", "lava") >= iou("jpeg-q23", "naive"),
                      fmt(iou("jpeg-q23", "lava")) + " vs " +
                          fmt(iou("jpeg-q23", "naive")));
            break;
        }
        case TableId::kT2: {
            for (const char* cond : {"jpeg-q23", "h264-crf23", "h264-crf28"}) {
                add_check(result, std::string(cond) + " offset-only AP < naive AP",
                          ap(cond, "offset-only") < ap(cond, "naive"),
                          fmt(ap(cond, "offset-only")) + " vs " +
                              fmt(ap(cond, "naive")));
                add_check(result, std::string(cond) + " offset-gate AP >= 0.99",
                          ap(cond, "offset-gate") >= 0.99,
                          fmt(ap(cond, "offset-gate")));
                add_check(result, std::string(cond) + " offset-gate ECE <= 0.02",
                          ece(cond, "offset-gate") <= 0.02,
                          fmt(ece(cond, "offset-gate")));
            }
            for (const auto& cond : ex.conditions) {
                double best = 0.0;
                for (const auto& [variant_label, spec] : ex.variants) {
                    best = std::max(best, iou(cond.label, variant_label));
                }
                // Tied-best resolved at the tables' reported precision.
                add_check(result, cond.label + " lava IoU tied-best",
                          iou(cond.label, "lava") >= best - 1e-3,
                          fmt(iou(cond.label, "lava")) + " vs best " + fmt(best));
            }
            break;
        }
        case TableId::kT3a: {
            const std::vector<double> in_bank = {0.25, 0.5, 0.75, 1.0};
            std::vector<double> naive_aps;
            for (double d : in_bank) {
                std::ostringstream label;
                label << "offset+" << d << "s";
                add_check(result, label.str() + " lava AP >= 0.99",
                          ap(label.str(), "lava") >= 0.99,
                          fmt(ap(label.str(), "lava")));
                naive_aps.push_back(ap(label.str(), "naive"));
            }
            const double rho = spearman_correlation(in_bank, naive_aps);
            add_check(result, "naive AP decreasing in |offset| (spearman < 0)",
                      rho < 0.0, fmt(rho));
            add_check(result, "offset+2s lava AP > naive AP",
                      ap("offset+2s", "lava") > ap("offset+2s", "naive"),
                      fmt(ap("offset+2s", "lava")) + " vs " +
                          fmt(ap("offset+2s", "naive")));
            break;
        }
        case TableId::kT3b: {
            for (const char* cond :
                 {"stretch-0.9x", "stretch-0.95x", "stretch-1.05x"}) {
                add_check(result, std::string(cond) + " raw AP < 0.7",
                          ap(cond, "raw") < 0.7, fmt(ap(cond, "raw")));
            }
            for (const auto& cond : ex.conditions) {
                add_check(result, cond.label + " corrected AP >= 0.99",
                          ap(cond.label, "corrected") >= 0.99,
                          fmt(ap(cond.label, "corrected")));
            }
            break;
        }
        case TableId::kT4a: {
            double best_gain = -1.0;
            std::string best_cond;
            int strict = 0;
            for (const auto& cond : ex.conditions) {
                const double gain = ap(cond.label, "lava") - ap(cond.label, "naive");
                add_check(result, cond.label + " lava AP >= naive AP", gain >= 0.0,
                          "delta " + fmt(gain));
                if (gain > 1e-6) ++strict;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_cond = cond.label;
                }
            }
            add_check(result, "strict gain in at least 5 of 6 conditions",
                      strict >= 5, std::to_string(strict) + " strict");
            const bool compression_audio =
                best_cond == "jpeg+mp3-32k" || best_cond == "jpeg+stretch-0.95";
            add_check(result,
                      "largest gain in a compression+audio-degradation condition",
                      compression_audio, best_cond + " (+" + fmt(best_gain) + ")");
            break;
        }
    }
    return result;
}

}  // namespace lava
