// Scripted desk-scale experiments reproducing the ablation and robustness
// table structures, with their qualitative assertions evaluated inline.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lava/io.hpp"

namespace lava {

enum class TableId { kT1, kT2, kT3a, kT3b, kT4a };

const char* to_string(TableId id);
TableId table_id_from_string(const std::string& name);

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ReproduceResult {
    std::vector<ReportRow> rows;
    std::vector<CheckResult> checks;
    bool all_passed = true;
};

// Benchmark generation settings for a table experiment. Each table pins its
// own regime (scenario mix, tamper fractions, score statistics).
GenConfig table_benchmark(TableId id, std::uint64_t seed);

// Run the full experiment for one table. Deterministic in the seed.
ReproduceResult reproduce_table(TableId id, std::uint64_t seed);

// Spearman rank correlation (average ranks on ties).
double spearman_correlation(const std::vector<double>& xs,
                            const std::vector<double>& ys);

}  // namespace lava
