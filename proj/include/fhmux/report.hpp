// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fhmux/params.hpp"

namespace fhmux {

// Raised for invalid user input (flags, grids, config values). The CLI maps
// it to exit code 1.
class UsageError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// A rectangular sweep result. Cells are JSON scalars: numbers, strings, or
// null for values that do not exist for that row (an absent bound, say).
// Rows are emitted in sorted-key order, so equal inputs give equal bytes.
struct SweepTable {
    std::vector<std::string> columns;
    std::vector<std::vector<nlohmann::json>> rows;
    std::vector<std::pair<std::string, nlohmann::json>> metadata;
};

enum class OutputFormat { kCsv, kJson };

// Parses "csv" or "json"; anything else is a UsageError.
OutputFormat parse_format(const std::string& name);

// CSV: `# key=value` metadata lines, then a header row, then data rows.
// Null cells are empty fields. Doubles use %.12g.
void write_csv(const SweepTable& table, std::ostream& out);

// JSON: {"metadata": {...}, "columns": [...], "rows": [{col: value}...]}
// with rows mirroring the CSV 1:1 (null where CSV is empty).
void write_json(const SweepTable& table, std::ostream& out);

void write_table(const SweepTable& table, std::ostream& out, OutputFormat f);
std::string table_to_string(const SweepTable& table, OutputFormat f);

struct SimulateCell {
    int K = 1;
    int T = 0;
};

struct SimulateOptions {
    long long model_samples = 1'000'000;
    long long scenarios = 1'000;
    double window_rrus = 1'000.0;
    int threads = 1;
};

// Columns {K, T, t_bar, p_block, lower, upper, tail_bound}; one row per
// (K, t_bar) pair with T = K * t_bar, which must be integral within 1e-9.
SweepTable build_blocking_table(const ModelParams& params,
                                std::vector<int> k_list,
                                std::vector<double> t_bar_grid);

// Columns {T, p_block, lower, upper, ratio}; ratio = lower/upper, the
// squared (1-c)/(1-lambda) tightness factor. Metadata carries the
// large-T log-slope ln(lambda).
SweepTable build_bounds_table(const ModelParams& params, int K,
                              std::vector<int> t_list);

// Columns {p_threshold, K, T_min, t_bar, gain, asymptote}; asymptote is the
// large-K per-RRU capacity (1 - p) * mu.
SweepTable build_capacity_table(const ModelParams& params,
                                std::vector<double> thresholds,
                                std::vector<int> k_list);

// Columns {K, T, method, mc_mean, mc_stderr, analytic, z_score}; two rows
// per cell, method "model" (direct count sampling) and "spatial" (point
// process scenarios). Thread count affects runtime only, never the bytes.
SweepTable build_simulate_table(const ModelParams& params,
                                std::vector<SimulateCell> cells,
                                const SimulateOptions& options,
                                std::uint64_t seed);

// Columns {K, n, log_pmf, pmf} for n = 0..n_max; n_max < 0 selects the
// certified cutoff beyond which the tail is below 1e-12.
SweepTable build_pmf_table(const ModelParams& params, int K, long long n_max);

}  // namespace fhmux
