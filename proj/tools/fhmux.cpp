// SPDX-License-Identifier: Apache-2.0
//
// fhmux: blocking probability, capacity dimensioning, and multiplexing gain
// for clustered fronthaul links, with Monte Carlo cross-checks.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fhmux/params.hpp"
#include "fhmux/report.hpp"
#include "fhmux/selfcheck.hpp"
#include "fhmux/version.hpp"

namespace {

struct CommonOpts {
    double lambda_u = 5.0;
    double lambda_r = 1.0;
    double gamma_a = 3.5;
    double gamma_b = 3.5;
    std::uint64_t seed = 42;
    std::string out;
    std::string format = "csv";
    std::string config;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--lambda-u", o.lambda_u, "user density per unit area")
        ->capture_default_str();
    cmd->add_option("--lambda-r", o.lambda_r, "RRU density per unit area")
        ->capture_default_str();
    cmd->add_option("--gamma-a", o.gamma_a, "cell-area gamma shape")
        ->capture_default_str();
    cmd->add_option("--gamma-b", o.gamma_b, "cell-area gamma rate scale")
        ->capture_default_str();
    cmd->add_option("--seed", o.seed, "master random seed")
        ->capture_default_str();
    cmd->add_option("--out", o.out, "output path (default: stdout)");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--config", o.config,
                    "flat key = value config file; flags override config "
                    "values");
}

// Every option lives on a subcommand, so the config file is expanded by hand
// before CLI11 sees the argument list: each "key = value" line becomes
// "--key value" at the --config position, skipped when the flag is already on
// the command line so explicit flags always win.
std::vector<std::string> expand_config_args(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    std::size_t insert_at = args.size();
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a == "--config") {
            if (i + 1 >= args.size()) return args;  // CLI11 reports it
            path = args[i + 1];
            insert_at = i + 2;
            break;
        }
        if (a.rfind("--config=", 0) == 0) {
            path = a.substr(9);
            insert_at = i + 1;
            break;
        }
    }
    if (path.empty()) return args;

    std::ifstream file(path);
    if (!file) throw fhmux::UsageError("cannot read config file: " + path);
    const auto trim = [](const std::string& s) {
        const char* ws = " \t\r\n";
        const auto b = s.find_first_not_of(ws);
        if (b == std::string::npos) return std::string();
        return s.substr(b, s.find_last_not_of(ws) - b + 1);
    };
    const auto flag_given = [&args](const std::string& flag) {
        return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
    };
    std::vector<std::string> injected;
    std::string line;
    int line_no = 0;
    while (std::getline(file, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') continue;
        const auto where = path + ":" + std::to_string(line_no);
        const auto eq = text.find('=');
        if (eq == std::string::npos)
            throw fhmux::UsageError(where + ": expected 'key = value', got '" +
                                    text + "'");
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty())
            throw fhmux::UsageError(where + ": empty key or value");
        const std::string flag = "--" + key;
        if (flag_given(flag)) continue;
        injected.push_back(flag);
        injected.push_back(value);
    }
    args.insert(args.begin() + static_cast<std::ptrdiff_t>(insert_at),
                injected.begin(), injected.end());
    return args;
}

fhmux::ModelParams make_params(const CommonOpts& o) {
    try {
        return fhmux::ModelParams::make(o.lambda_u, o.lambda_r, o.gamma_a,
                                        o.gamma_b);
    } catch (const std::invalid_argument& e) {
        throw fhmux::UsageError(e.what());
    }
}

void emit(fhmux::SweepTable table, const std::string& command,
          const CommonOpts& o) {
    table.metadata.emplace_back("command", command);
    const fhmux::OutputFormat fmt = fhmux::parse_format(o.format);
    if (o.out.empty()) {
        fhmux::write_table(table, std::cout, fmt);
        return;
    }
    std::ofstream file(o.out, std::ios::binary);
    if (!file) throw fhmux::UsageError("cannot open output file: " + o.out);
    fhmux::write_table(table, file, fmt);
    if (!file.good())
        throw fhmux::UsageError("failed writing output file: " + o.out);
}

std::vector<fhmux::SimulateCell> parse_cells(
    const std::vector<std::string>& cell_args) {
    std::vector<fhmux::SimulateCell> cells;
    for (const std::string& s : cell_args) {
        fhmux::SimulateCell c;
        char extra = 0;
        if (std::sscanf(s.c_str(), "%d:%d%c", &c.K, &c.T, &extra) != 2)
            throw fhmux::UsageError("bad --cell '" + s +
                                    "' (expected K:T, e.g. 5:29)");
        cells.push_back(c);
    }
    return cells;
}

int run_validate(const std::vector<int>& ids, int threads) {
    const auto results = fhmux::run_acceptance(ids, threads);
    if (results.empty()) {
        std::cerr << "error: no matching criteria\n";
        return 1;
    }
    int failed = 0;
    for (const auto& r : results) {
        if (!r.pass) ++failed;
        std::printf("%-4s %2d  %-26s %8.3f s  %s\n", r.pass ? "PASS" : "FAIL",
                    r.id, r.name.c_str(), r.seconds, r.detail.c_str());
    }
    std::printf("%zu criteria, %d failed\n", results.size(), failed);
    std::fflush(stdout);
    return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fronthaul multiplexing calculator: blocking probability, "
                 "capacity dimensioning, and gain for clustered links, with "
                 "Monte Carlo cross-checks."};
    app.name("fhmux");
    app.set_version_flag("--version", std::string("fhmux ") + fhmux::kVersion);
    app.require_subcommand(1);

    // blocking
    auto* blocking = app.add_subcommand(
        "blocking", "Blocking probability over a (K, t_bar) grid");
    CommonOpts blocking_common;
    add_common(blocking, blocking_common);
    std::vector<int> blocking_k = {1, 3, 5, 10, 20, 50, 100};
    std::vector<double> blocking_tbar = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    blocking->add_option("--K", blocking_k, "cluster sizes")
        ->delimiter(',')
        ->capture_default_str();
    blocking
        ->add_option("--t-bar", blocking_tbar,
                     "per-RRU capacities; K * t_bar must be integral")
        ->delimiter(',')
        ->capture_default_str();

    // bounds
    auto* bounds = app.add_subcommand(
        "bounds", "Closed-form bounds against the series value for one K");
    CommonOpts bounds_common;
    add_common(bounds, bounds_common);
    int bounds_k = 5;
    std::vector<int> bounds_t;
    bounds->add_option("--K", bounds_k, "cluster size")->capture_default_str();
    bounds
        ->add_option("--T", bounds_t,
                     "capacities to evaluate (default: 1..60)")
        ->delimiter(',');

    // capacity
    auto* capacity = app.add_subcommand(
        "capacity", "Minimum capacity and multiplexing gain per threshold");
    CommonOpts capacity_common;
    add_common(capacity, capacity_common);
    std::vector<double> capacity_p = {0.05};
    std::vector<int> capacity_k = {1, 3, 5, 10, 20, 50, 100};
    capacity
        ->add_option("--threshold", capacity_p, "blocking thresholds in (0,1)")
        ->delimiter(',')
        ->capture_default_str();
    capacity->add_option("--K", capacity_k, "cluster sizes")
        ->delimiter(',')
        ->capture_default_str();

    // simulate
    auto* simulate = app.add_subcommand(
        "simulate", "Monte Carlo estimates against the analytical value");
    CommonOpts simulate_common;
    add_common(simulate, simulate_common);
    std::vector<std::string> simulate_cells = {"1:8", "5:29"};
    fhmux::SimulateOptions simulate_opts;
    simulate->add_option("--cell", simulate_cells, "operating points as K:T")
        ->delimiter(',')
        ->capture_default_str();
    simulate
        ->add_option("--model-samples", simulate_opts.model_samples,
                     "direct count samples per cell")
        ->capture_default_str();
    simulate
        ->add_option("--scenarios", simulate_opts.scenarios,
                     "spatial scenarios per cell")
        ->capture_default_str();
    simulate
        ->add_option("--window-rrus", simulate_opts.window_rrus,
                     "expected RRUs per scenario window")
        ->capture_default_str();
    simulate
        ->add_option("--threads", simulate_opts.threads,
                     "worker threads (never affects output bytes)")
        ->capture_default_str();

    // pmf
    auto* pmf_cmd = app.add_subcommand(
        "pmf", "Cluster user-count distribution table");
    CommonOpts pmf_common;
    add_common(pmf_cmd, pmf_common);
    int pmf_k = 1;
    long long pmf_n_max = -1;
    pmf_cmd->add_option("--K", pmf_k, "cluster size")->capture_default_str();
    pmf_cmd
        ->add_option("--n-max", pmf_n_max,
                     "largest n; negative selects the certified cutoff")
        ->capture_default_str();

    // validate
    auto* validate = app.add_subcommand(
        "validate", "Run the built-in acceptance suite (text report)");
    std::vector<int> validate_ids;
    int validate_threads = 0;
    validate
        ->add_option("--criteria", validate_ids,
                     "criterion ids to run (default: all)")
        ->delimiter(',');
    validate
        ->add_option("--threads", validate_threads,
                     "worker threads, 0 = hardware count")
        ->capture_default_str();

    std::vector<std::string> args;
    try {
        args = expand_config_args(argc, argv);
    } catch (const fhmux::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (blocking->parsed()) {
            emit(fhmux::build_blocking_table(make_params(blocking_common),
                                             blocking_k, blocking_tbar),
                 "blocking", blocking_common);
        } else if (bounds->parsed()) {
            if (bounds_t.empty()) {
                bounds_t.resize(60);
                std::iota(bounds_t.begin(), bounds_t.end(), 1);
            }
            emit(fhmux::build_bounds_table(make_params(bounds_common),
                                           bounds_k, bounds_t),
                 "bounds", bounds_common);
        } else if (capacity->parsed()) {
            emit(fhmux::build_capacity_table(make_params(capacity_common),
                                             capacity_p, capacity_k),
                 "capacity", capacity_common);
        } else if (simulate->parsed()) {
            emit(fhmux::build_simulate_table(make_params(simulate_common),
                                             parse_cells(simulate_cells),
                                             simulate_opts,
                                             simulate_common.seed),
                 "simulate", simulate_common);
        } else if (pmf_cmd->parsed()) {
            emit(fhmux::build_pmf_table(make_params(pmf_common), pmf_k,
                                        pmf_n_max),
                 "pmf", pmf_common);
        } else if (validate->parsed()) {
            return run_validate(validate_ids, validate_threads);
        }
    } catch (const fhmux::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
