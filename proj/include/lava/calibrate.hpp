// Temperature scaling fitted by expected-calibration-error minimization
// over a log-spaced grid, plus the equal-width-bin ECE itself.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lava {

struct CalibrationConfig {
    int bin_count = 10;
    double grid_low = 0.01;
    double grid_high = 10.0;
    int grid_size = 300;
    double logit_clip_epsilon = 1e-6;
    bool include_identity = true;

    void validate() const;
};

struct CalibrationModel {
    double temperature = 1.0;
    double achieved_ece = 0.0;
};

// Bin-weighted mean absolute gap between predicted confidence and the
// empirical positive rate over equal-width bins [k/B, (k+1)/B), the last
// bin closed at 1. Empty bins are skipped.
double expected_calibration_error(std::span<const double> probs,
                                  std::span<const std::uint8_t> labels,
                                  int bin_count);

double clipped_logit(double p, double epsilon);
double sigmoid(double x);

// Grid-search the temperature that minimizes ECE of sigmoid(logit(s)/T).
// Ties break toward the temperature closest to 1 (then the smaller one).
// Degenerate labels (single class) return T=1 with a diagnostic on stderr.
CalibrationModel fit_temperature(std::span<const double> fused,
                                 std::span<const std::uint8_t> labels,
                                 const CalibrationConfig& config);

// Element-wise sigmoid(logit(clip(s, eps, 1-eps)) / T).
std::vector<double> apply_calibration(std::span<const double> fused,
                                      const CalibrationModel& model,
                                      const CalibrationConfig& config);

namespace reference {
// Single-threaded grid search kept as the comparison baseline for the
// parallel fit; must produce identical results.
CalibrationModel fit_temperature_serial(std::span<const double> fused,
                                        std::span<const std::uint8_t> labels,
                                        const CalibrationConfig& config);
}  // namespace reference

}  // namespace lava
