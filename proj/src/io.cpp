#include "lava/io.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lava {

using nlohmann::json;

std::string format_double(double value) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw std::runtime_error("format_double failed");
    return std::string(buf, ptr);
}

namespace {

double parse_double(const std::string& field, const std::string& context) {
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw std::runtime_error(context + ": bad number '" + field + "'");
    }
    return value;
}

long parse_long(const std::string& field, const std::string& context) {
    long value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size()) {
        throw std::runtime_error(context + ": bad integer '" + field + "'");
    }
    return value;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(current);
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(current);
    return fields;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    return in;
}

void expect_header(std::ifstream& in, const std::string& expected,
                   const std::string& where) {
    std::string line;
    if (!std::getline(in, line) || line != expected) {
        throw std::runtime_error(where + ": line 1: expected header '" + expected +
                                 "'");
    }
}

constexpr const char* kScoreHeader =
    "video_id,frame_index,visual_score,audio_score,label";

}  // namespace

void write_benchmark(const std::filesystem::path& dir,
                     const std::vector<SimulatedVideo>& videos,
                     const GenConfig& config) {
    std::filesystem::create_directories(dir);
    auto sorted = videos;
    std::sort(sorted.begin(), sorted.end(),
              [](const SimulatedVideo& a, const SimulatedVideo& b) {
                  return a.record.id < b.record.id;
              });

    auto manifest = open_out(dir / "manifest.txt");
    manifest << "seed = " << config.seed << "\n";
    manifest << "video_count = " << sorted.size() << "\n";
    manifest << "scenario_mix = " << to_string(config.scenario_mix) << "\n";
    for (const auto& v : sorted) {
        const auto& rec = v.record;
        manifest << "[" << rec.id << "]\n";
        manifest << "frame_count = " << rec.meta.frame_count << "\n";
        manifest << "frame_rate = " << format_double(rec.meta.frame_rate) << "\n";
        manifest << "audio_sample_count = " << rec.meta.audio_sample_count << "\n";
        manifest << "audio_sample_rate = "
                 << format_double(rec.meta.audio_sample_rate) << "\n";
        manifest << "scenario = " << to_string(v.scenario) << "\n";

        auto csv = open_out(dir / (rec.id + ".csv"));
        csv << kScoreHeader << "\n";
        for (int t = 0; t < rec.meta.frame_count; ++t) {
            const auto i = static_cast<std::size_t>(t);
            csv << rec.id << ',' << t << ',' << format_double(rec.visual.values[i])
                << ',' << format_double(rec.audio.values[i]) << ','
                << int(rec.labels.values[i]) << "\n";
        }
    }
}

std::vector<SimulatedVideo> read_benchmark(const std::filesystem::path& dir) {
    auto manifest = open_in(dir / "manifest.txt");
    std::vector<SimulatedVideo> videos;
    std::string line;
    std::string current_id;
    std::map<std::string, std::string> fields;
    int line_no = 0;

    auto flush_video = [&]() {
        if (current_id.empty()) return;
        for (const char* key : {"frame_count", "frame_rate", "audio_sample_count",
                                "audio_sample_rate", "scenario"}) {
            if (!fields.count(key)) {
                throw std::runtime_error("manifest.txt: video " + current_id +
                                         " missing key '" + key + "'");
            }
        }
        SimulatedVideo video;
        video.scenario = tamper_scenario_from_string(fields["scenario"]);
        const int frame_count =
            static_cast<int>(parse_long(fields["frame_count"], "manifest.txt"));
        video.record.id = current_id;
        video.record.meta = VideoMeta::make(
            frame_count, parse_double(fields["frame_rate"], "manifest.txt"),
            parse_long(fields["audio_sample_count"], "manifest.txt"),
            parse_double(fields["audio_sample_rate"], "manifest.txt"));

        const auto csv_path = dir / (current_id + ".csv");
        auto csv = open_in(csv_path);
        expect_header(csv, kScoreHeader, csv_path.string());
        std::vector<double> visual;
        std::vector<double> audio;
        std::vector<std::uint8_t> labels;
        std::string row;
        int row_no = 1;
        while (std::getline(csv, row)) {
            ++row_no;
            if (row.empty()) continue;
            const auto cols = split_csv_line(row);
            const std::string where =
                csv_path.string() + ": line " + std::to_string(row_no);
            if (cols.size() != 5) throw std::runtime_error(where + ": expected 5 columns");
            if (cols[0] != current_id) {
                throw std::runtime_error(where + ": video_id mismatch");
            }
            if (parse_long(cols[1], where) != static_cast<long>(visual.size())) {
                throw std::runtime_error(where + ": frame_index out of order");
            }
            visual.push_back(parse_double(cols[2], where));
            audio.push_back(parse_double(cols[3], where));
            const long y = parse_long(cols[4], where);
            if (y != 0 && y != 1) throw std::runtime_error(where + ": label must be 0/1");
            labels.push_back(static_cast<std::uint8_t>(y));
        }
        if (static_cast<int>(visual.size()) != frame_count) {
            throw std::runtime_error(csv_path.string() + ": row count " +
                                     std::to_string(visual.size()) +
                                     " != frame_count " + std::to_string(frame_count));
        }
        video.record.visual = ScoreSequence::make(Modality::kVisual, std::move(visual));
        video.record.audio = ScoreSequence::make(Modality::kAudio, std::move(audio));
        video.record.labels = FrameLabels::make(std::move(labels));
        video.record.validate();
        videos.push_back(std::move(video));
    };

    while (std::getline(manifest, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::runtime_error("manifest.txt: line " +
                                         std::to_string(line_no) + ": bad section");
            }
            flush_video();
            current_id = line.substr(1, line.size() - 2);
            fields.clear();
            continue;
        }
        const auto eq = line.find(" = ");
        if (eq == std::string::npos) {
            throw std::runtime_error("manifest.txt: line " + std::to_string(line_no) +
                                     ": expected 'key = value'");
        }
        fields[line.substr(0, eq)] = line.substr(eq + 3);
    }
    flush_video();
    return videos;
}

namespace {

json distortion_to_json(const Distortion& d) {
    json j;
    j["kind"] = to_string(d.kind);
    j["amount"] = d.amount;
    j["noise_std"] = d.noise_std;
    return j;
}

Distortion distortion_from_json(const json& j) {
    const double noise = j.value("noise_std", 0.05);
    if (j.contains("preset")) {
        return distortion_from_preset(j.at("preset").get<std::string>(), noise);
    }
    Distortion d;
    d.kind = distortion_kind_from_string(j.at("kind").get<std::string>());
    d.amount = j.at("amount").get<double>();
    d.noise_std = noise;
    d.validate();
    return d;
}

const std::vector<std::string> kStageOrder = {"stretch", "gate", "offset",
                                              "fusion", "calibration"};

}  // namespace

RunManifest load_run_manifest(const std::filesystem::path& path) {
    auto in = open_in(path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
    RunManifest m;
    if (j.contains("benchmark")) {
        const auto& b = j["benchmark"];
        m.benchmark.seed = b.value("seed", m.benchmark.seed);
        m.benchmark.video_count = b.value("video_count", m.benchmark.video_count);
        m.benchmark.frames_per_video =
            b.value("frames_per_video", m.benchmark.frames_per_video);
        m.benchmark.frame_rate = b.value("frame_rate", m.benchmark.frame_rate);
        m.benchmark.audio_sample_rate =
            b.value("audio_sample_rate", m.benchmark.audio_sample_rate);
        if (b.contains("tamper_fraction_range")) {
            const auto& r = b["tamper_fraction_range"];
            m.benchmark.tamper_fraction_range = {r.at(0).get<double>(),
                                                 r.at(1).get<double>()};
        }
        m.benchmark.authentic_video_fraction =
            b.value("authentic_video_fraction", m.benchmark.authentic_video_fraction);
        m.benchmark.authentic_score_mean =
            b.value("authentic_score_mean", m.benchmark.authentic_score_mean);
        m.benchmark.tampered_score_mean =
            b.value("tampered_score_mean", m.benchmark.tampered_score_mean);
        m.benchmark.score_noise_std =
            b.value("score_noise_std", m.benchmark.score_noise_std);
        if (b.contains("scenario_mix")) {
            m.benchmark.scenario_mix =
                scenario_mix_from_string(b["scenario_mix"].get<std::string>());
        }
        m.benchmark.edge_margin_fraction =
            b.value("edge_margin_fraction", m.benchmark.edge_margin_fraction);
        m.benchmark.validate();
    }
    if (j.contains("split")) {
        const auto& s = j["split"];
        m.split.oracle = s.value("oracle", m.split.oracle);
        m.split.validation_ratio = s.value("validation_ratio", m.split.validation_ratio);
        m.split.seed = s.value("seed", m.split.seed);
        if (!m.split.oracle) m.split.validate();
    }
    if (j.contains("gate")) m.pipeline.gate.tau = j["gate"].value("tau", 0.1);
    m.pipeline.gate.validate();
    if (j.contains("offset_bank")) {
        m.pipeline.bank.offsets_seconds =
            j["offset_bank"].get<std::vector<double>>();
    }
    m.pipeline.bank.validate();
    if (j.contains("confidence")) {
        m.pipeline.confidence.half_window =
            j["confidence"].value("half_window", m.pipeline.confidence.half_window);
    }
    m.pipeline.confidence.validate();
    if (j.contains("calibration")) {
        const auto& c = j["calibration"];
        auto& cal = m.pipeline.calibration;
        cal.bin_count = c.value("bin_count", cal.bin_count);
        cal.grid_low = c.value("grid_low", cal.grid_low);
        cal.grid_high = c.value("grid_high", cal.grid_high);
        cal.grid_size = c.value("grid_size", cal.grid_size);
        cal.logit_clip_epsilon = c.value("logit_clip_epsilon", cal.logit_clip_epsilon);
        cal.include_identity = c.value("include_identity", cal.include_identity);
        cal.validate();
    }
    if (j.contains("measure")) {
        m.pipeline.measure =
            offset_measure_from_string(j["measure"].get<std::string>());
    }
    if (j.contains("metrics")) {
        m.pipeline.iou_threshold =
            j["metrics"].value("iou_threshold", m.pipeline.iou_threshold);
        m.pipeline.decision_threshold =
            j["metrics"].value("decision_threshold", m.pipeline.decision_threshold);
    }
    if (j.contains("attribution")) {
        const auto& a = j["attribution"];
        m.attribution.elevation_threshold =
            a.value("elevation_threshold", m.attribution.elevation_threshold);
        m.attribution.min_elevated_fraction =
            a.value("min_elevated_fraction", m.attribution.min_elevated_fraction);
        m.attribution.validate();
    }
    if (j.contains("stage_order")) {
        const auto order = j["stage_order"].get<std::vector<std::string>>();
        if (order != kStageOrder) {
            throw std::runtime_error(
                path.string() +
                ": stage_order must be stretch, gate, offset, fusion, calibration");
        }
    }
    if (j.contains("variants")) {
        m.variants = j["variants"].get<std::vector<std::string>>();
        for (const auto& v : m.variants) variant_from_string(v);
    }
    if (j.contains("conditions")) {
        m.conditions.clear();
        for (const auto& c : j["conditions"]) {
            ConditionSpec spec;
            spec.label = c.at("label").get<std::string>();
            if (c.contains("distortions")) {
                for (const auto& d : c["distortions"]) {
                    spec.distortions.push_back(distortion_from_json(d));
                }
            }
            m.conditions.push_back(std::move(spec));
        }
    }
    m.output_dir = j.value("output_dir", m.output_dir);
    return m;
}

void save_run_manifest(const std::filesystem::path& path, const RunManifest& m) {
    json j;
    j["benchmark"] = {
        {"seed", m.benchmark.seed},
        {"video_count", m.benchmark.video_count},
        {"frames_per_video", m.benchmark.frames_per_video},
        {"frame_rate", m.benchmark.frame_rate},
        {"audio_sample_rate", m.benchmark.audio_sample_rate},
        {"tamper_fraction_range",
         {m.benchmark.tamper_fraction_range.first,
          m.benchmark.tamper_fraction_range.second}},
        {"authentic_video_fraction", m.benchmark.authentic_video_fraction},
        {"authentic_score_mean", m.benchmark.authentic_score_mean},
        {"tampered_score_mean", m.benchmark.tampered_score_mean},
        {"score_noise_std", m.benchmark.score_noise_std},
        {"scenario_mix", to_string(m.benchmark.scenario_mix)},
        {"edge_margin_fraction", m.benchmark.edge_margin_fraction},
    };
    j["split"] = {{"oracle", m.split.oracle},
                  {"validation_ratio", m.split.validation_ratio},
                  {"seed", m.split.seed}};
    j["gate"] = {{"tau", m.pipeline.gate.tau}};
    j["offset_bank"] = m.pipeline.bank.offsets_seconds;
    j["confidence"] = {{"half_window", m.pipeline.confidence.half_window}};
    j["calibration"] = {
        {"bin_count", m.pipeline.calibration.bin_count},
        {"grid_low", m.pipeline.calibration.grid_low},
        {"grid_high", m.pipeline.calibration.grid_high},
        {"grid_size", m.pipeline.calibration.grid_size},
        {"logit_clip_epsilon", m.pipeline.calibration.logit_clip_epsilon},
        {"include_identity", m.pipeline.calibration.include_identity},
    };
    j["measure"] = to_string(m.pipeline.measure);
    j["metrics"] = {{"iou_threshold", m.pipeline.iou_threshold},
                    {"decision_threshold", m.pipeline.decision_threshold}};
    j["attribution"] = {
        {"elevation_threshold", m.attribution.elevation_threshold},
        {"min_elevated_fraction", m.attribution.min_elevated_fraction}};
    j["stage_order"] = kStageOrder;
    j["variants"] = m.variants;
    j["conditions"] = json::array();
    for (const auto& c : m.conditions) {
        json cond;
        cond["label"] = c.label;
        cond["distortions"] = json::array();
        for (const auto& d : c.distortions) {
            cond["distortions"].push_back(distortion_to_json(d));
        }
        j["conditions"].push_back(cond);
    }
    j["output_dir"] = m.output_dir;
    auto out = open_out(path);
    out << j.dump(2) << "\n";
}

namespace {
constexpr const char* kReportHeader = "condition,variant,ap,temporal_iou,ece,fpr";
}

void write_report_csv(const std::filesystem::path& path,
                      const std::vector<ReportRow>& rows) {
    auto out = open_out(path);
    out << kReportHeader << "\n";
    for (const auto& r : rows) {
        out << r.condition << ',' << r.variant << ',' << format_double(r.ap) << ','
            << format_double(r.temporal_iou) << ',' << format_double(r.ece) << ','
            << format_double(r.fpr) << "\n";
    }
}

std::vector<ReportRow> read_report_csv(const std::filesystem::path& path) {
    auto in = open_in(path);
    expect_header(in, kReportHeader, path.string());
    std::vector<ReportRow> rows;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cols = split_csv_line(line);
        const std::string where = path.string() + ": line " + std::to_string(line_no);
        if (cols.size() != 6) throw std::runtime_error(where + ": expected 6 columns");
        ReportRow r;
        r.condition = cols[0];
        r.variant = cols[1];
        r.ap = parse_double(cols[2], where);
        r.temporal_iou = parse_double(cols[3], where);
        r.ece = parse_double(cols[4], where);
        r.fpr = parse_double(cols[5], where);
        rows.push_back(std::move(r));
    }
    return rows;
}

namespace {
constexpr const char* kFrameHeader =
    "video_id,frame,visual_score,audio_score,fused,calibrated_p,label";
constexpr const char* kVideoHeader =
    "video_id,gate_g,visual_mean,delta_star,temperature,verdict,"
    "visual_evidence,audio_evidence";
}  // namespace

void write_fused_frames(const std::filesystem::path& path,
                        const ConditionOutcome& outcome) {
    auto out = open_out(path);
    out << kFrameHeader << "\n";
    for (const auto& v : outcome.videos) {
        const auto& rec = v.distorted;
        for (std::size_t t = 0; t < v.fused.size(); ++t) {
            out << rec.id << ',' << t << ',' << format_double(rec.visual.values[t])
                << ',' << format_double(rec.audio.values[t]) << ','
                << format_double(v.fused[t]) << ',' << format_double(v.calibrated[t])
                << ',' << int(rec.labels.values[t]) << "\n";
        }
    }
}

void write_fused_videos(const std::filesystem::path& path,
                        const ConditionOutcome& outcome) {
    auto out = open_out(path);
    out << kVideoHeader << "\n";
    for (const auto& v : outcome.videos) {
        out << v.distorted.id << ',' << (v.gate_evaluated ? v.gate.g : -1) << ','
            << format_double(v.gate.visual_mean) << ','
            << format_double(v.delta_star) << ','
            << format_double(outcome.calibration.temperature) << ',';
        if (v.has_verdict) {
            out << to_string(v.verdict.label) << ','
                << format_double(v.verdict.visual_segment_mean) << ','
                << format_double(v.verdict.audio_segment_mean);
        } else {
            out << "-,-,-";
        }
        out << "\n";
    }
}

std::vector<FusedVideoFrames> read_fused_frames(const std::filesystem::path& path) {
    auto in = open_in(path);
    expect_header(in, kFrameHeader, path.string());
    std::vector<FusedVideoFrames> videos;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto cols = split_csv_line(line);
        const std::string where = path.string() + ": line " + std::to_string(line_no);
        if (cols.size() != 7) throw std::runtime_error(where + ": expected 7 columns");
        if (videos.empty() || videos.back().video_id != cols[0]) {
            videos.push_back({});
            videos.back().video_id = cols[0];
        }
        auto& v = videos.back();
        if (parse_long(cols[1], where) != static_cast<long>(v.fused.size())) {
            throw std::runtime_error(where + ": frame index out of order");
        }
        v.visual.push_back(parse_double(cols[2], where));
        v.audio.push_back(parse_double(cols[3], where));
        v.fused.push_back(parse_double(cols[4], where));
        v.calibrated.push_back(parse_double(cols[5], where));
        const long y = parse_long(cols[6], where);
        if (y != 0 && y != 1) throw std::runtime_error(where + ": label must be 0/1");
        v.labels.push_back(static_cast<std::uint8_t>(y));
    }
    if (videos.empty()) {
        throw std::runtime_error(path.string() + ": no frame rows");
    }
    return videos;
}

}  // namespace lava
