#include <doctest.h>

#include <stdexcept>
#include <algorithm>
#include <cmath>
#include <random>

#include "lava/metrics.hpp"

using namespace lava;

namespace {

// Independent O(n^2) oracle: walk every distinct score as a threshold and
// accumulate precision at each recall step.
double ap_bruteforce(const std::vector<double>& scores,
                     const std::vector<std::uint8_t>& labels) {
    std::vector<double> thresholds = scores;
    std::sort(thresholds.begin(), thresholds.end(), std::greater<>());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()),
                     thresholds.end());
    std::size_t total_pos = 0;
    for (auto y : labels) total_pos += y;
    double ap = 0.0;
    double prev_recall = 0.0;
    for (double thr : thresholds) {
        std::size_t tp = 0;
        std::size_t predicted = 0;
        for (std::size_t i = 0; i < scores.size(); ++i) {
            if (scores[i] >= thr) {
                ++predicted;
                tp += labels[i];
            }
        }
        const double recall = static_cast<double>(tp) / static_cast<double>(total_pos);
        const double precision =
            static_cast<double>(tp) / static_cast<double>(predicted);
        ap += (recall - prev_recall) * precision;
        prev_recall = recall;
    }
    return ap;
}

struct RandomInstance {
    std::vector<double> scores;
    std::vector<std::uint8_t> labels;
};

RandomInstance random_instance(std::mt19937_64& rng, int max_len, bool ties) {
    std::uniform_int_distribution<int> len_dist(2, max_len);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::bernoulli_distribution bit(0.35);
    RandomInstance inst;
    const int n = len_dist(rng);
    inst.scores.resize(static_cast<std::size_t>(n));
    inst.labels.resize(static_cast<std::size_t>(n));
    bool pos = false;
    bool neg = false;
    for (int i = 0; i < n; ++i) {
        double s = uniform(rng);
        if (ties) s = std::round(s * 8.0) / 8.0;  // force tied scores
        inst.scores[static_cast<std::size_t>(i)] = s;
        inst.labels[static_cast<std::size_t>(i)] = bit(rng) ? 1 : 0;
        (inst.labels[static_cast<std::size_t>(i)] ? pos : neg) = true;
    }
    if (!pos) inst.labels[0] = 1;
    if (!neg) inst.labels[1] = 0;
    return inst;
}

}  // namespace

TEST_CASE("average precision at the fixed points") {
    CHECK(average_precision(std::vector<double>{0.9, 0.8, 0.1, 0.2},
                            std::vector<std::uint8_t>{1, 1, 0, 0}) ==
          doctest::Approx(1.0).epsilon(1e-15));
    // single positive ranked last among three frames
    CHECK(average_precision(std::vector<double>{0.9, 0.5, 0.1},
                            std::vector<std::uint8_t>{0, 0, 1}) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("average precision rejects single-class labels") {
    CHECK_THROWS_AS(average_precision(std::vector<double>{0.1, 0.2},
                                      std::vector<std::uint8_t>{1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(average_precision(std::vector<double>{0.1, 0.2},
                                      std::vector<std::uint8_t>{0, 0}),
                    std::invalid_argument);
}

TEST_CASE("average precision matches the brute-force oracle") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 300; ++trial) {
        const auto inst = random_instance(rng, 40, trial % 2 == 0);
        const double fast = average_precision(inst.scores, inst.labels);
        const double slow = ap_bruteforce(inst.scores, inst.labels);
        CHECK(std::abs(fast - slow) <= 1e-12);
    }
}

TEST_CASE("average precision invariant under strictly increasing maps") {
    std::mt19937_64 rng(321);
    std::uniform_real_distribution<double> scale(0.5, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        const auto inst = random_instance(rng, 30, true);
        const double base = average_precision(inst.scores, inst.labels);
        const double a = scale(rng);
        auto mapped = inst.scores;
        for (auto& s : mapped) s = std::exp(a * s) + 0.1 * s * s * s;
        CHECK(average_precision(mapped, inst.labels) ==
              doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("temporal IoU conventions") {
    const std::vector<std::uint8_t> gt{0, 1, 1, 0, 0, 0};
    CHECK(temporal_iou(std::vector<double>{0.0, 1.0, 1.0, 0.0, 0.0, 0.0}, gt) == 1.0);
    // prediction covers gt plus an equal-length spillover
    CHECK(temporal_iou(std::vector<double>{0.0, 1.0, 1.0, 1.0, 1.0, 0.0}, gt) == 0.5);
    CHECK(temporal_iou(std::vector<double>{0.0, 0.0}, std::vector<std::uint8_t>{0, 0}) ==
          1.0);
    CHECK(temporal_iou(std::vector<double>{1.0, 0.0}, std::vector<std::uint8_t>{0, 0}) ==
          0.0);
}

TEST_CASE("temporal IoU is symmetric in the two frame sets") {
    std::mt19937_64 rng(5);
    std::bernoulli_distribution bit(0.5);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<std::uint8_t> a(30);
        std::vector<std::uint8_t> b(30);
        std::vector<double> ap(30);
        std::vector<double> bp(30);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = bit(rng) ? 1 : 0;
            b[i] = bit(rng) ? 1 : 0;
            ap[i] = a[i];
            bp[i] = b[i];
        }
        CHECK(temporal_iou(ap, b) == temporal_iou(bp, a));
    }
}

TEST_CASE("false positive rate counts only authentic videos") {
    const std::vector<double> low(10, 0.1);
    std::vector<double> spike(10, 0.1);
    spike[3] = 0.9;
    const std::vector<std::uint8_t> clean(10, 0);
    std::vector<std::uint8_t> tampered(10, 0);
    tampered[3] = 1;

    std::vector<ScoredVideo> videos;
    videos.push_back({low, clean});
    videos.push_back({low, clean});
    videos.push_back({low, clean});
    videos.push_back({spike, clean});
    videos.push_back({spike, tampered});  // tampered: not in the denominator
    CHECK(false_positive_rate(videos, 0.5) == doctest::Approx(0.25));

    std::vector<ScoredVideo> all_clean_low{{low, clean}, {low, clean}};
    CHECK(false_positive_rate(all_clean_low, 0.5) == 0.0);

    std::vector<ScoredVideo> no_authentic{{spike, tampered}};
    CHECK_THROWS_AS(false_positive_rate(no_authentic, 0.5), std::invalid_argument);
}

TEST_CASE("video-level AUC with max pooling") {
    const std::vector<double> high(4, 0.9);
    const std::vector<double> low(4, 0.2);
    const std::vector<std::uint8_t> pos{0, 1, 1, 0};
    const std::vector<std::uint8_t> neg(4, 0);
    std::vector<ScoredVideo> videos{{high, pos}, {low, neg}};
    CHECK(video_level_auc(videos) == 1.0);
    std::vector<ScoredVideo> tied{{high, pos}, {high, neg}};
    CHECK(video_level_auc(tied) == 0.5);
}

TEST_CASE("pearson correlation") {
    const std::vector<double> a{0.0, 0.5, 1.0, 0.25};
    auto b = a;
    CHECK(pearson_correlation(a, b) == doctest::Approx(1.0));
    for (auto& v : b) v = 1.0 - v;
    CHECK(pearson_correlation(a, b) == doctest::Approx(-1.0));
    CHECK(pearson_correlation(a, std::vector<double>(4, 0.3)) == 0.0);
}
