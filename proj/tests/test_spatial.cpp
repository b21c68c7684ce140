#include <doctest.h>

#include <stdexcept>
#include <random>

#include "lava/spatial.hpp"

using namespace lava;

namespace {

BinaryMask random_mask(std::mt19937_64& rng, int h, int w, double density) {
    std::bernoulli_distribution bit(density);
    std::vector<std::uint8_t> values(static_cast<std::size_t>(h) * w);
    for (auto& v : values) v = bit(rng) ? 1 : 0;
    return BinaryMask::make(h, w, std::move(values));
}

BinaryMask solid_rect(int h, int w, int top, int left, int bottom, int right) {
    std::vector<std::uint8_t> values(static_cast<std::size_t>(h) * w, 0);
    for (int y = top; y < bottom; ++y) {
        for (int x = left; x < right; ++x) {
            values[static_cast<std::size_t>(y) * w + x] = 1;
        }
    }
    return BinaryMask::make(h, w, std::move(values));
}

bool contains(const BinaryMask& big, const BinaryMask& small) {
    for (std::size_t i = 0; i < big.values.size(); ++i) {
        if (small.values[i] && !big.values[i]) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("closing fixed points") {
    const auto empty = BinaryMask::make(5, 5, std::vector<std::uint8_t>(25, 0));
    CHECK(morphological_close(empty, 1).values == empty.values);

    const auto rect = solid_rect(9, 9, 2, 2, 7, 7);
    CHECK(morphological_close(rect, 1).values == rect.values);
}

TEST_CASE("closing fills a one-pixel hole") {
    auto holed = solid_rect(7, 7, 1, 1, 6, 6);
    holed.values[3 * 7 + 3] = 0;
    const auto closed = morphological_close(holed, 1);
    CHECK(closed.values[3 * 7 + 3] == 1);
    CHECK(closed.values == solid_rect(7, 7, 1, 1, 6, 6).values);
}

TEST_CASE("closing is extensive and idempotent on random masks") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const auto mask = random_mask(rng, 16, 16, 0.35);
        const auto once = morphological_close(mask, 1 + trial % 3);
        CHECK(contains(once, mask));
        const auto twice = morphological_close(once, 1 + trial % 3);
        CHECK(twice.values == once.values);
    }
}

TEST_CASE("spatial metrics fixed points") {
    const auto gt = solid_rect(10, 10, 2, 2, 8, 8);
    TamperMap pred = TamperMap::make(
        10, 10, std::vector<double>(100, 0.0));
    for (std::size_t i = 0; i < pred.values.size(); ++i) {
        pred.values[i] = gt.values[i] ? 1.0 : 0.0;
    }
    const auto exact = spatial_metrics(pred, gt, 0.5, false, 1);
    CHECK(exact.iou == doctest::Approx(1.0));
    CHECK(exact.recall == doctest::Approx(1.0));
    CHECK(exact.f1 == doctest::Approx(1.0));

    const TamperMap blank = TamperMap::make(10, 10, std::vector<double>(100, 0.0));
    const auto miss = spatial_metrics(blank, gt, 0.5, false, 1);
    CHECK(miss.iou == 0.0);
    CHECK(miss.recall == 0.0);
    CHECK(miss.f1 == 0.0);
}

TEST_CASE("closing merges a fragmented prediction over the truth") {
    const auto gt = solid_rect(20, 20, 4, 4, 16, 16);
    TamperMap pred = TamperMap::make(20, 20, std::vector<double>(400, 0.0));
    for (int y = 4; y < 16; ++y) {
        for (int x = 4; x < 16; ++x) {
            if ((x + y) % 2 == 0) pred.values[static_cast<std::size_t>(y) * 20 + x] = 0.9;
        }
    }
    const auto base = spatial_metrics(pred, gt, 0.5, false, 1);
    const auto refined = spatial_metrics(pred, gt, 0.5, true, 1);
    CHECK(refined.refined);
    CHECK(refined.iou > base.iou);
    CHECK(refined.f1 > base.f1);
    CHECK(base.recall - refined.recall < 0.05);
}

TEST_CASE("F1 matches a direct pixel-count computation") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        const auto gt = random_mask(rng, 12, 12, 0.4);
        TamperMap pred = TamperMap::make(12, 12, std::vector<double>(144, 0.0));
        for (auto& v : pred.values) v = uniform(rng);
        const auto report = spatial_metrics(pred, gt, 0.5, false, 1);

        std::size_t tp = 0;
        std::size_t fp = 0;
        std::size_t fn = 0;
        for (std::size_t i = 0; i < pred.values.size(); ++i) {
            const bool p = pred.values[i] >= 0.5;
            const bool g = gt.values[i] != 0;
            tp += p && g;
            fp += p && !g;
            fn += !p && g;
        }
        const double precision = tp + fp ? double(tp) / double(tp + fp) : 0.0;
        const double recall = tp + fn ? double(tp) / double(tp + fn) : 1.0;
        const double f1 = precision + recall > 0.0
                              ? 2 * precision * recall / (precision + recall)
                              : 0.0;
        CHECK(report.f1 == doctest::Approx(f1).epsilon(1e-12));
    }
}

TEST_CASE("dimension mismatch is rejected") {
    const auto gt = solid_rect(4, 4, 0, 0, 2, 2);
    const TamperMap pred = TamperMap::make(4, 5, std::vector<double>(20, 0.0));
    CHECK_THROWS_AS(spatial_metrics(pred, gt, 0.5, false, 1), std::invalid_argument);
}

TEST_CASE("mask validation") {
    CHECK_THROWS_AS(BinaryMask::make(2, 2, {0, 1, 2, 0}), std::invalid_argument);
    CHECK_THROWS_AS(BinaryMask::make(2, 2, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(morphological_close(solid_rect(3, 3, 0, 0, 1, 1), 0),
                    std::invalid_argument);
}
