// SPDX-License-Identifier: Apache-2.0
#include "fhmux/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>

#include "fhmux/blocking.hpp"
#include "fhmux/dimensioning.hpp"
#include "fhmux/dist.hpp"
#include "fhmux/mc.hpp"
#include "fhmux/version.hpp"

namespace fhmux {

namespace {

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string format_cell(const nlohmann::json& cell) {
    if (cell.is_null()) return "";
    if (cell.is_string()) return cell.get<std::string>();
    if (cell.is_number_integer()) return std::to_string(cell.get<long long>());
    if (cell.is_number_unsigned())
        return std::to_string(cell.get<unsigned long long>());
    if (cell.is_number_float()) return format_double(cell.get<double>());
    if (cell.is_boolean()) return cell.get<bool>() ? "true" : "false";
    return cell.dump();
}

nlohmann::json cell_or_null(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

void append_param_metadata(SweepTable& table, const ModelParams& params) {
    table.metadata.emplace_back("tool", "fhmux");
    table.metadata.emplace_back("version", kVersion);
    table.metadata.emplace_back("lambda_u", params.lambda_u);
    table.metadata.emplace_back("lambda_r", params.lambda_r);
    table.metadata.emplace_back("gamma_a", params.a);
    table.metadata.emplace_back("gamma_b", params.b);
    table.metadata.emplace_back("mu", params.mu);
}

void require(bool ok, const std::string& message) {
    if (!ok) throw UsageError(message);
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::kCsv;
    if (name == "json") return OutputFormat::kJson;
    throw UsageError("unknown output format '" + name +
                     "' (expected csv or json)");
}

void write_csv(const SweepTable& table, std::ostream& out) {
    for (const auto& [key, value] : table.metadata)
        out << "# " << key << "=" << format_cell(value) << "\n";
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ",";
        out << table.columns[c];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            out << format_cell(row[c]);
        }
        out << "\n";
    }
}

void write_json(const SweepTable& table, std::ostream& out) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json meta;
    for (const auto& [key, value] : table.metadata) meta[key] = value;
    doc["metadata"] = std::move(meta);
    doc["columns"] = table.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t c = 0; c < row.size(); ++c)
            obj[table.columns[c]] = row[c];
        rows.push_back(std::move(obj));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << "\n";
}

void write_table(const SweepTable& table, std::ostream& out, OutputFormat f) {
    if (f == OutputFormat::kCsv)
        write_csv(table, out);
    else
        write_json(table, out);
}

std::string table_to_string(const SweepTable& table, OutputFormat f) {
    std::ostringstream out;
    write_table(table, out, f);
    return out.str();
}

SweepTable build_blocking_table(const ModelParams& params,
                                std::vector<int> k_list,
                                std::vector<double> t_bar_grid) {
    require(!k_list.empty(), "K list must not be empty");
    require(!t_bar_grid.empty(), "t_bar grid must not be empty");
    for (int k : k_list)
        require(k >= 1, "cluster size K must be >= 1 (got " +
                            std::to_string(k) + ")");
    for (double tb : t_bar_grid)
        require(std::isfinite(tb) && tb >= 0.0,
                "t_bar values must be finite and >= 0");

    k_list = sorted_unique(std::move(k_list));
    t_bar_grid = sorted_unique(std::move(t_bar_grid));

    SweepTable table;
    table.columns = {"K", "T", "t_bar", "p_block", "lower", "upper",
                     "tail_bound"};
    append_param_metadata(table, params);
    for (int k : k_list) {
        for (double tb : t_bar_grid) {
            const double exact = static_cast<double>(k) * tb;
            const long long t = std::llround(exact);
            require(std::fabs(exact - static_cast<double>(t)) <= 1e-9,
                    "K*t_bar must be an integer: K=" + std::to_string(k) +
                        ", t_bar=" + format_double(tb));
            const BlockingResult r =
                blocking_probability(k, static_cast<int>(t), params);
            table.rows.push_back({k, t, tb, r.value, cell_or_null(r.lower_bound),
                                  cell_or_null(r.upper_bound), r.tail_bound});
        }
    }
    return table;
}

SweepTable build_bounds_table(const ModelParams& params, int K,
                              std::vector<int> t_list) {
    require(K >= 1, "cluster size K must be >= 1");
    require(!t_list.empty(), "T list must not be empty");
    for (int t : t_list)
        require(t >= 0, "capacity T must be >= 0 (got " + std::to_string(t) +
                            ")");
    t_list = sorted_unique(std::move(t_list));

    SweepTable table;
    table.columns = {"T", "p_block", "lower", "upper", "ratio"};
    append_param_metadata(table, params);
    table.metadata.emplace_back("K", K);
    table.metadata.emplace_back("slope_ln_lambda", std::log(params.lam));
    for (int t : t_list) {
        const BlockingResult r = blocking_probability(K, t, params);
        nlohmann::json ratio = nullptr;
        if (r.lower_bound && r.upper_bound && *r.upper_bound > 0.0)
            ratio = *r.lower_bound / *r.upper_bound;
        table.rows.push_back({t, r.value, cell_or_null(r.lower_bound),
                              cell_or_null(r.upper_bound), ratio});
    }
    return table;
}

SweepTable build_capacity_table(const ModelParams& params,
                                std::vector<double> thresholds,
                                std::vector<int> k_list) {
    require(!thresholds.empty(), "threshold list must not be empty");
    require(!k_list.empty(), "K list must not be empty");
    for (double p : thresholds)
        require(std::isfinite(p) && p > 0.0 && p < 1.0,
                "blocking threshold must lie in (0, 1)");
    for (int k : k_list)
        require(k >= 1, "cluster size K must be >= 1 (got " +
                            std::to_string(k) + ")");
    thresholds = sorted_unique(std::move(thresholds));
    k_list = sorted_unique(std::move(k_list));

    SweepTable table;
    table.columns = {"p_threshold", "K", "T_min", "t_bar", "gain", "asymptote"};
    append_param_metadata(table, params);
    Dimensioner dim(params);
    for (double p : thresholds) {
        const double asymptote = dim.asymptotic_capacity_per_rru(p);
        for (int k : k_list) {
            const DimensioningResult r = dim.dimension(k, p);
            table.rows.push_back(
                {p, k, r.T_min, r.t_bar, r.gain, asymptote});
        }
    }
    return table;
}

SweepTable build_simulate_table(const ModelParams& params,
                                std::vector<SimulateCell> cells,
                                const SimulateOptions& options,
                                std::uint64_t seed) {
    require(!cells.empty(), "cell list must not be empty");
    require(options.model_samples >= 1, "model sample count must be >= 1");
    require(options.scenarios >= 1, "scenario count must be >= 1");
    require(options.window_rrus >= 1.0,
            "expected RRU count per window must be >= 1");
    for (const auto& c : cells) {
        require(c.K >= 1, "cluster size K must be >= 1 (got " +
                              std::to_string(c.K) + ")");
        require(c.T >= 0, "capacity T must be >= 0 (got " +
                              std::to_string(c.T) + ")");
    }
    std::sort(cells.begin(), cells.end(),
              [](const SimulateCell& a, const SimulateCell& b) {
                  return a.K != b.K ? a.K < b.K : a.T < b.T;
              });
    cells.erase(std::unique(cells.begin(), cells.end(),
                            [](const SimulateCell& a, const SimulateCell& b) {
                                return a.K == b.K && a.T == b.T;
                            }),
                cells.end());

    SweepTable table;
    table.columns = {"K", "T", "method", "mc_mean", "mc_stderr", "analytic",
                     "z_score"};
    append_param_metadata(table, params);
    table.metadata.emplace_back("seed", seed);
    table.metadata.emplace_back("model_samples", options.model_samples);
    table.metadata.emplace_back("scenarios", options.scenarios);
    table.metadata.emplace_back("window_rrus", options.window_rrus);

    SpatialMcOptions spatial;
    spatial.scenarios = options.scenarios;
    spatial.window_rrus = options.window_rrus;
    spatial.threads = options.threads;

    for (const auto& cell : cells) {
        const double analytic =
            blocking_probability(cell.K, cell.T, params).value;
        const McEstimate model = estimate_blocking_model(
            cell.K, cell.T, params, options.model_samples, seed,
            options.threads);
        const McEstimate space =
            estimate_blocking_spatial(cell.K, cell.T, params, spatial, seed);
        for (const auto* est : {&model, &space}) {
            const bool is_model = est == &model;
            nlohmann::json z = nullptr;
            if (est->std_error > 0.0)
                z = (est->mean - analytic) / est->std_error;
            else if (est->mean == analytic)
                z = 0.0;
            table.rows.push_back({cell.K, cell.T,
                                  is_model ? "model" : "spatial", est->mean,
                                  est->std_error, analytic, z});
        }
    }
    return table;
}

SweepTable build_pmf_table(const ModelParams& params, int K, long long n_max) {
    require(K >= 1, "cluster size K must be >= 1");
    if (n_max < 0) n_max = certified_pmf_cutoff(K, params).n_star;

    SweepTable table;
    table.columns = {"K", "n", "log_pmf", "pmf"};
    append_param_metadata(table, params);
    table.metadata.emplace_back("n_max", n_max);
    for (long long n = 0; n <= n_max; ++n) {
        const double lp = log_pmf(n, K, params);
        table.rows.push_back({K, n, lp, std::exp(lp)});
    }
    return table;
}

}  // namespace fhmux
