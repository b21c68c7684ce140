#include "lava/calibrate.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace lava {

void CalibrationConfig::validate() const {
    if (bin_count < 1) throw std::invalid_argument("CalibrationConfig: bin_count < 1");
    if (!(grid_low > 0.0 && grid_low < grid_high)) {
        throw std::invalid_argument("CalibrationConfig: need 0 < grid_low < grid_high");
    }
    if (grid_size < 1) throw std::invalid_argument("CalibrationConfig: grid_size < 1");
    if (!(logit_clip_epsilon > 0.0 && logit_clip_epsilon < 0.5)) {
        throw std::invalid_argument("CalibrationConfig: epsilon outside (0, 0.5)");
    }
}

double expected_calibration_error(std::span<const double> probs,
                                  std::span<const std::uint8_t> labels,
                                  int bin_count) {
    if (probs.size() != labels.size() || probs.empty()) {
        throw std::invalid_argument("expected_calibration_error: bad inputs");
    }
    const auto bins = static_cast<std::size_t>(bin_count);
    std::vector<double> sum_prob(bins, 0.0);
    std::vector<double> sum_pos(bins, 0.0);
    std::vector<std::size_t> count(bins, 0);
    for (std::size_t i = 0; i < probs.size(); ++i) {
        const double p = probs[i];
        auto k = static_cast<std::size_t>(p * bin_count);
        if (k >= bins) k = bins - 1;  // p == 1 falls into the closed last bin
        sum_prob[k] += p;
        sum_pos[k] += labels[i];
        ++count[k];
    }
    const double n = static_cast<double>(probs.size());
    double ece = 0.0;
    for (std::size_t k = 0; k < bins; ++k) {
        if (count[k] == 0) continue;
        const double nk = static_cast<double>(count[k]);
        ece += (nk / n) * std::abs(sum_prob[k] / nk - sum_pos[k] / nk);
    }
    return ece;
}

double clipped_logit(double p, double epsilon) {
    const double c = std::clamp(p, epsilon, 1.0 - epsilon);
    return std::log(c / (1.0 - c));
}

double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

namespace {

std::vector<double> candidate_temperatures(const CalibrationConfig& cfg) {
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(cfg.grid_size) + 1);
    if (cfg.grid_size == 1) {
        grid.push_back(cfg.grid_low);
    } else {
        const double log_lo = std::log(cfg.grid_low);
        const double log_hi = std::log(cfg.grid_high);
        for (int i = 0; i < cfg.grid_size; ++i) {
            const double f = static_cast<double>(i) / (cfg.grid_size - 1);
            grid.push_back(std::exp(log_lo + f * (log_hi - log_lo)));
        }
    }
    if (cfg.include_identity) grid.push_back(1.0);
    return grid;
}

double ece_at_temperature(std::span<const double> logits,
                          std::span<const std::uint8_t> labels,
                          double temperature, int bin_count) {
    std::vector<double> probs(logits.size());
    for (std::size_t i = 0; i < logits.size(); ++i) {
        probs[i] = sigmoid(logits[i] / temperature);
    }
    return expected_calibration_error(probs, labels, bin_count);
}

CalibrationModel pick_best(const std::vector<double>& grid,
                           const std::vector<double>& eces) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const bool better =
            eces[i] < eces[best] ||
            (eces[i] == eces[best] &&
             (std::abs(grid[i] - 1.0) < std::abs(grid[best] - 1.0) ||
              (std::abs(grid[i] - 1.0) == std::abs(grid[best] - 1.0) &&
               grid[i] < grid[best])));
        if (better) best = i;
    }
    return {grid[best], eces[best]};
}

bool single_class(std::span<const std::uint8_t> labels) {
    bool any0 = false;
    bool any1 = false;
    for (auto y : labels) (y ? any1 : any0) = true;
    return !(any0 && any1);
}

std::vector<double> to_logits(std::span<const double> fused, double epsilon) {
    std::vector<double> logits(fused.size());
    for (std::size_t i = 0; i < fused.size(); ++i) {
        logits[i] = clipped_logit(fused[i], epsilon);
    }
    return logits;
}

}  // namespace

CalibrationModel fit_temperature(std::span<const double> fused,
                                 std::span<const std::uint8_t> labels,
                                 const CalibrationConfig& config) {
    config.validate();
    if (fused.size() != labels.size() || fused.empty()) {
        throw std::invalid_argument("fit_temperature: bad inputs");
    }
    if (single_class(labels)) {
        std::cerr << "fit_temperature: labels contain a single class, "
                     "calibration undefined; keeping T=1\n";
        return {1.0, expected_calibration_error(fused, labels, config.bin_count)};
    }
    const auto logits = to_logits(fused, config.logit_clip_epsilon);
    const auto grid = candidate_temperatures(config);
    std::vector<double> eces(grid.size());
    const auto count = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t i = 0; i < count; ++i) {
        eces[static_cast<std::size_t>(i)] = ece_at_temperature(
            logits, labels, grid[static_cast<std::size_t>(i)], config.bin_count);
    }
    return pick_best(grid, eces);
}

namespace reference {

CalibrationModel fit_temperature_serial(std::span<const double> fused,
                                        std::span<const std::uint8_t> labels,
                                        const CalibrationConfig& config) {
    config.validate();
    if (fused.size() != labels.size() || fused.empty()) {
        throw std::invalid_argument("fit_temperature: bad inputs");
    }
    if (single_class(labels)) {
        return {1.0, expected_calibration_error(fused, labels, config.bin_count)};
    }
    const auto logits = to_logits(fused, config.logit_clip_epsilon);
    const auto grid = candidate_temperatures(config);
    std::vector<double> eces(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        eces[i] = ece_at_temperature(logits, labels, grid[i], config.bin_count);
    }
    return pick_best(grid, eces);
}

}  // namespace reference

std::vector<double> apply_calibration(std::span<const double> fused,
                                      const CalibrationModel& model,
                                      const CalibrationConfig& config) {
    std::vector<double> out(fused.size());
    for (std::size_t i = 0; i < fused.size(); ++i) {
        out[i] = sigmoid(clipped_logit(fused[i], config.logit_clip_epsilon) /
                         model.temperature);
    }
    return out;
}

}  // namespace lava
