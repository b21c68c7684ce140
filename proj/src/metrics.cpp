#include "lava/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace lava {

double average_precision(std::span<const double> scores,
                         std::span<const std::uint8_t> labels) {
    if (scores.size() != labels.size()) {
        throw std::invalid_argument("average_precision: length mismatch");
    }
    const std::size_t n = scores.size();
    std::size_t total_pos = 0;
    for (auto y : labels) total_pos += y;
    if (total_pos == 0 || total_pos == n) {
        throw std::invalid_argument(
            "average_precision: undefined without both classes");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return scores[a] > scores[b];
    });

    double ap = 0.0;
    double prev_recall = 0.0;
    std::size_t tp = 0;
    std::size_t seen = 0;
    std::size_t i = 0;
    while (i < n) {
        // Advance over the tied block so precision/recall are evaluated at
        // distinct thresholds only.
        std::size_t j = i;
        const double s = scores[order[i]];
        while (j < n && scores[order[j]] == s) {
            tp += labels[order[j]];
            ++j;
        }
        seen = j;
        const double recall = static_cast<double>(tp) / static_cast<double>(total_pos);
        const double precision = static_cast<double>(tp) / static_cast<double>(seen);
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
        i = j;
    }
    return ap;
}

double temporal_iou(std::span<const double> probs,
                    std::span<const std::uint8_t> labels,
                    double threshold) {
    if (probs.size() != labels.size()) {
        throw std::invalid_argument("temporal_iou: length mismatch");
    }
    std::size_t inter = 0;
    std::size_t uni = 0;
    for (std::size_t t = 0; t < probs.size(); ++t) {
        const bool pred = probs[t] >= threshold;
        const bool gt = labels[t] != 0;
        inter += (pred && gt) ? 1 : 0;
        uni += (pred || gt) ? 1 : 0;
    }
    if (uni == 0) return 1.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

namespace {

bool all_authentic(const ScoredVideo& v) {
    return std::all_of(v.labels.begin(), v.labels.end(),
                       [](std::uint8_t y) { return y == 0; });
}

double max_prob(const ScoredVideo& v) {
    double m = 0.0;
    for (double p : v.probs) m = std::max(m, p);
    return m;
}

}  // namespace

double false_positive_rate(std::span<const ScoredVideo> videos, double threshold) {
    std::size_t authentic = 0;
    std::size_t flagged = 0;
    for (const auto& v : videos) {
        if (!all_authentic(v)) continue;
        ++authentic;
        if (std::any_of(v.probs.begin(), v.probs.end(),
                        [&](double p) { return p >= threshold; })) {
            ++flagged;
        }
    }
    if (authentic == 0) {
        throw std::invalid_argument("false_positive_rate: no authentic videos");
    }
    return static_cast<double>(flagged) / static_cast<double>(authentic);
}

double video_level_auc(std::span<const ScoredVideo> videos) {
    std::vector<double> pos;
    std::vector<double> neg;
    for (const auto& v : videos) {
        (all_authentic(v) ? neg : pos).push_back(max_prob(v));
    }
    if (pos.empty() || neg.empty()) {
        throw std::invalid_argument("video_level_auc: needs both video classes");
    }
    double wins = 0.0;
    for (double p : pos) {
        for (double q : neg) {
            if (p > q) wins += 1.0;
            else if (p == q) wins += 0.5;
        }
    }
    return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw std::invalid_argument("pearson_correlation: length mismatch");
    }
    const double n = static_cast<double>(a.size());
    double ma = 0.0;
    double mb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        ma += a[i];
        mb += b[i];
    }
    ma /= n;
    mb /= n;
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab += da * db;
        saa += da * da;
        sbb += db * db;
    }
    if (saa <= 0.0 || sbb <= 0.0) return 0.0;
    return sab / std::sqrt(saa * sbb);
}

}  // namespace lava
