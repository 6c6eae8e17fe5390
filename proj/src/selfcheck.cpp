// SPDX-License-Identifier: Apache-2.0
#include "fhmux/selfcheck.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <thread>
#include <vector>

#include "fhmux/blocking.hpp"
#include "fhmux/dimensioning.hpp"
#include "fhmux/dist.hpp"
#include "fhmux/mc.hpp"
#include "fhmux/params.hpp"
#include "fhmux/report.hpp"

namespace fhmux {

namespace {

constexpr std::uint64_t kSeed = 42;

ModelParams defaults() { return ModelParams::make(5.0, 1.0, 3.5, 3.5); }

std::string num(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

// detail is always filled with the measured quantities, pass or fail.
struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    std::function<bool(std::string&, int)> body;
};

bool check_t1(std::string& detail, int) {
    const int t1 = Dimensioner(defaults()).min_capacity(1, 0.05);
    detail = "T_min(K=1, p=0.05) = " + std::to_string(t1) + ", expected 8";
    return t1 == 8;
}

bool check_t5(std::string& detail, int) {
    const int t5 = Dimensioner(defaults()).min_capacity(5, 0.05);
    detail = "T_min(K=5, p=0.05) = " + std::to_string(t5) +
             " (t_bar = " + num(t5 / 5.0) + "), expected 29";
    return t5 == 29;
}

bool check_gain(std::string& detail, int) {
    const Dimensioner dim(defaults());
    const double g5 = dim.gain(5, 0.05);
    const double ginf = dim.asymptotic_gain(0.05);
    detail = "gain(5) = " + num(g5) + " (expected 0.275 +- 1e-9), gain_inf = " +
             num(ginf) + " (expected 0.40625 +- 1e-12)";
    return std::fabs(g5 - 0.275) <= 1e-9 &&
           std::fabs(ginf - 0.40625) <= 1e-12;
}

bool check_sandwich(std::string& detail, int) {
    const ModelParams p = defaults();
    int checked = 0;
    int with_upper = 0;
    int violations = 0;
    for (int k : {1, 3, 5, 10, 20}) {
        for (int t = 3; t <= 60; ++t) {
            if (!bounds_applicable(k, t, p)) continue;
            ++checked;
            const BlockingResult r = blocking_probability(k, t, p);
            if (!r.lower_bound || !(*r.lower_bound < r.value)) ++violations;
            if (r.upper_bound) {
                ++with_upper;
                if (!(r.value < *r.upper_bound)) ++violations;
            }
        }
    }
    detail = std::to_string(checked) + " admissible cases (expected 290), " +
             std::to_string(with_upper) + " with a finite upper bound, " +
             std::to_string(violations) + " ordering violations";
    return checked == 290 && violations == 0;
}

bool check_tightness(std::string& detail, int) {
    // ((1-c)/(1-lam))^2 equals lower/upper wherever the upper bound exists
    // and extends it algebraically below the majorant's convergence point.
    const ModelParams p = defaults();
    std::ostringstream s;
    s << "tightness ratio at T=10,1e2,1e3,1e4:";
    double prev = -1.0;
    bool ok = true;
    double last = 0.0;
    for (int t : {10, 100, 1000, 10000}) {
        const double r = bound_tightness_ratio(5, t, p);
        s << " " << num(r);
        ok = ok && r > prev;
        prev = r;
        last = r;
    }
    ok = ok && last > 0.99;
    detail = s.str() + "; require strictly increasing and > 0.99 at T=1e4";
    return ok;
}

bool check_slope(std::string& detail, int) {
    const ModelParams p = defaults();
    const double l0 = std::log(blocking_probability(1, 200, p).value);
    const double l1 = std::log(blocking_probability(1, 201, p).value);
    const double err = std::fabs((l1 - l0) - std::log(p.lam));
    detail = "Delta ln p_block at T=200 is " + num(l1 - l0) +
             ", ln(lambda) = " + num(std::log(p.lam)) + ", |err| = " +
             num(err) + " (require < 0.01)";
    return err < 0.01;
}

bool check_large_k_limit(std::string& detail, int) {
    const ModelParams p = defaults();
    std::ostringstream s;
    s << "|p_block(K, 4K) - 0.2| for K=10,20,50,100:";
    double prev = HUGE_VAL;
    bool ok = true;
    for (int k : {10, 20, 50, 100}) {
        const double err =
            std::fabs(blocking_probability(k, 4 * k, p).value - 0.2);
        s << " " << num(err);
        ok = ok && err < prev;
        prev = err;
    }
    detail = s.str() + "; require strictly decreasing";
    return ok;
}

bool check_distribution(std::string& detail, int) {
    const ModelParams p = defaults();
    double worst_norm = 0.0;
    double worst_mean = 0.0;
    bool ok = true;
    for (int k : {1, 3, 5, 10, 20, 50, 100}) {
        const PmfCutoff cut = certified_pmf_cutoff(k, p, 1e-13);
        const long long n_max = cut.n_star + cut.n_star / 2 + 64;
        double sum = 0.0;
        double mean = 0.0;
        for (long long n = 0; n <= n_max; ++n) {
            const double q = pmf(n, k, p);
            sum += q;
            mean += static_cast<double>(n) * q;
        }
        const double norm_err = std::fabs(sum - 1.0);
        const double mean_err =
            std::fabs(mean - mean_count(k, p)) / mean_count(k, p);
        worst_norm = std::max(worst_norm, norm_err);
        worst_mean = std::max(worst_mean, mean_err);
        ok = ok && norm_err <= 1e-9 && mean_err <= 1e-6;
    }
    detail = "worst |sum - 1| = " + num(worst_norm) +
             " (require <= 1e-9), worst relative mean error = " +
             num(worst_mean) + " (require <= 1e-6)";
    return ok;
}

bool check_mc_chain(std::string& detail, int threads) {
    const ModelParams p = defaults();
    std::ostringstream s;
    bool ok = true;

    s << "model z:";
    for (const auto& [k, t] : {std::pair{1, 8}, {5, 29}, {10, 55}}) {
        const double analytic = blocking_probability(k, t, p).value;
        const McEstimate e =
            estimate_blocking_model(k, t, p, 1'000'000, kSeed, threads);
        const double z = (e.mean - analytic) / e.std_error;
        s << " " << num(z);
        ok = ok && std::fabs(z) <= 3.0;
    }

    s << "; spatial relative error:";
    for (const auto& [k, t] : {std::pair{1, 8}, {5, 29}}) {
        const double analytic = blocking_probability(k, t, p).value;
        SpatialMcOptions o;
        o.window_rrus = 1000.0;
        o.threads = threads;
        // floor(n_rrus / K) clusters per scenario; 5% headroom keeps the
        // pooled cluster count above 1e6.
        o.scenarios = (1'050'000LL * k + 999) / 1000;
        const McEstimate e = estimate_blocking_spatial(k, t, p, o, kSeed);
        const double rel = std::fabs(e.mean - analytic) / analytic;
        s << " " << num(rel) << " (" << e.replications << " clusters)";
        ok = ok && e.replications >= 1'000'000 && rel <= 0.10;
    }
    detail = s.str() + "; require |z| <= 3 and relative error <= 10%";
    return ok;
}

bool check_cell_areas(std::string& detail, int threads) {
    CellAreaOptions o;
    o.window_rrus = 1000.0;
    o.replications = 100;
    o.points_per_cell = 800.0;
    o.threads = threads;
    const CellAreaReport r = cell_area_fit(1.0, o, kSeed);
    const double mean_err = std::fabs(r.mean_area - 1.0);
    const double cv2_err = std::fabs(r.cv2 - 1.0 / 3.5) / (1.0 / 3.5);
    detail = "mean area = " + num(r.mean_area) +
             " (require within 1% of 1), cv^2 = " + num(r.cv2) +
             " (require within 5% of " + num(1.0 / 3.5) +
             "), KS distance = " + num(r.ks_distance) + " over " +
             std::to_string(r.cells) + " cells (informational)";
    return mean_err <= 0.01 && cv2_err <= 0.05;
}

bool check_sweep_shapes(std::string& detail, int) {
    const ModelParams p = defaults();
    const std::vector<int> ks = {1, 3, 5, 10, 20, 50, 100};
    bool t_ok = true;
    for (int k : ks) {
        double prev = HUGE_VAL;
        for (int tb = 1; tb <= 10; ++tb) {
            const double v = blocking_probability(k, k * tb, p).value;
            t_ok = t_ok && v < prev;
            prev = v;
        }
    }
    bool k_ok = true;
    for (int tb : {5, 6, 7}) {
        double prev = HUGE_VAL;
        for (int k : ks) {
            const double v = blocking_probability(k, k * tb, p).value;
            k_ok = k_ok && v < prev;
            prev = v;
        }
    }
    const Dimensioner dim(p);
    bool dim_ok = true;
    double floor_seen = HUGE_VAL;
    double prev_tbar = HUGE_VAL;
    for (int k : ks) {
        const double tbar =
            static_cast<double>(dim.min_capacity(k, 0.05)) / k;
        dim_ok = dim_ok && tbar <= prev_tbar && tbar >= 4.75;
        floor_seen = std::min(floor_seen, tbar);
        prev_tbar = tbar;
    }
    detail = std::string("blocking strictly decreasing in t_bar: ") +
             (t_ok ? "yes" : "NO") + "; in K at t_bar=5,6,7: " +
             (k_ok ? "yes" : "NO") + "; T_min/K non-increasing with floor " +
             num(floor_seen) + " >= 4.75: " + (dim_ok ? "yes" : "NO");
    return t_ok && k_ok && dim_ok;
}

bool check_determinism(std::string& detail, int) {
    const ModelParams p = defaults();
    SimulateOptions o;
    o.model_samples = 200'000;
    o.scenarios = 300;
    o.window_rrus = 1000.0;
    const std::vector<SimulateCell> cells = {{1, 8}, {5, 29}};

    o.threads = 1;
    const SweepTable serial = build_simulate_table(p, cells, o, kSeed);
    const SweepTable repeat = build_simulate_table(p, cells, o, kSeed);
    o.threads = 4;
    const SweepTable parallel = build_simulate_table(p, cells, o, kSeed);

    const std::string a = table_to_string(serial, OutputFormat::kCsv) +
                          table_to_string(serial, OutputFormat::kJson);
    const std::string b = table_to_string(repeat, OutputFormat::kCsv) +
                          table_to_string(repeat, OutputFormat::kJson);
    const std::string c = table_to_string(parallel, OutputFormat::kCsv) +
                          table_to_string(parallel, OutputFormat::kJson);
    const bool rerun_ok = a == b;
    const bool thread_ok = a == c;
    detail = std::string("rerun bytes identical: ") +
             (rerun_ok ? "yes" : "NO") +
             "; 1-thread vs 4-thread bytes identical: " +
             (thread_ok ? "yes" : "NO") + " (" +
             std::to_string(a.size()) + " bytes compared per format pair)";
    return rerun_ok && thread_ok;
}

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> table = {
        {1, "baseline capacity K=1", 1.0, check_t1},
        {2, "capacity K=5", 1.0, check_t5},
        {3, "multiplexing gain values", 1.0, check_gain},
        {4, "bound sandwich", 10.0, check_sandwich},
        {5, "bound tightness trend", 5.0, check_tightness},
        {6, "large-T log slope", 5.0, check_slope},
        {7, "large-K blocking limit", 10.0, check_large_k_limit},
        {8, "distribution identities", 5.0, check_distribution},
        {9, "monte carlo consistency", 300.0, check_mc_chain},
        {10, "cell area law", 120.0, check_cell_areas},
        {11, "sweep shape properties", 30.0, check_sweep_shapes},
        {12, "simulate determinism", 120.0, check_determinism},
    };
    return table;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids,
                                            int threads) {
    if (threads <= 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw > 0 ? static_cast<int>(hw) : 1;
    }
    std::vector<CriterionResult> results;
    for (const Criterion& c : criteria()) {
        if (!ids.empty() &&
            std::find(ids.begin(), ids.end(), c.id) == ids.end())
            continue;
        CriterionResult r;
        r.id = c.id;
        r.name = c.name;
        const auto start = std::chrono::steady_clock::now();
        bool math_ok = false;
        try {
            math_ok = c.body(r.detail, threads);
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        r.seconds = std::chrono::duration<double>(
                        std::chrono::steady_clock::now() - start)
                        .count();
        const bool in_budget = r.seconds < c.budget_seconds;
        r.pass = math_ok && in_budget;
        if (math_ok && !in_budget)
            r.detail += "; exceeded " + num(c.budget_seconds) + " s budget";
        results.push_back(std::move(r));
    }
    return results;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const CriterionResult& r) { return r.pass; });
}

}  // namespace fhmux
