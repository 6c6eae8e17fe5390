// SPDX-License-Identifier: Apache-2.0
#include "fhmux/mc.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "fhmux/dist.hpp"
#include "fhmux/rng.hpp"

namespace fhmux {

namespace {

// Stream families; scenario draws and model-level chunks must never share a
// stream even when they share a master seed.
constexpr std::uint64_t kFamilySpatial = 1;
constexpr std::uint64_t kFamilyModel = 2;
constexpr std::uint64_t kFamilyAreas = 3;

constexpr long long kModelChunk = 1 << 16;

struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    long long n = 0;

    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    void merge(const Accumulator& other) {
        sum += other.sum;
        sum_sq += other.sum_sq;
        n += other.n;
    }
};

McEstimate finish(const Accumulator& acc, std::uint64_t seed) {
    McEstimate e;
    e.seed = seed;
    e.replications = acc.n;
    if (acc.n == 0) return e;
    e.mean = acc.sum / static_cast<double>(acc.n);
    if (acc.n > 1) {
        const double ss = acc.sum_sq - acc.sum * acc.sum / static_cast<double>(acc.n);
        const double var = std::max(0.0, ss / static_cast<double>(acc.n - 1));
        e.std_error = std::sqrt(var / static_cast<double>(acc.n));
    }
    return e;
}

// Runs body(i) for i in [0, n) on up to `threads` workers. Work unit i only
// touches slot i of its output, so scheduling never changes the result.
void parallel_for(long long n, int threads,
                  const std::function<void(long long)>& body) {
    if (n <= 0) return;
    const int workers = static_cast<int>(
        std::max<long long>(1, std::min<long long>(threads, n)));
    if (workers == 1) {
        for (long long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        const long long begin = n * t / workers;
        const long long end = n * (t + 1) / workers;
        pool.emplace_back([begin, end, &body] {
            for (long long i = begin; i < end; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

double blocked_fraction(long long n_users, int T) {
    if (n_users <= T) return 0.0;
    return static_cast<double>(n_users - T) / static_cast<double>(n_users);
}

}  // namespace

McEstimate estimate_blocking_spatial(int K, int T, const ModelParams& params,
                                     const SpatialMcOptions& options,
                                     std::uint64_t seed) {
    if (K < 1) throw std::invalid_argument("cluster size K must be >= 1");
    if (T < 0) throw std::invalid_argument("capacity T must be >= 0");
    if (options.scenarios < 1)
        throw std::invalid_argument("scenario count must be >= 1");

    std::vector<Accumulator> partial(
        static_cast<std::size_t>(options.scenarios));
    parallel_for(options.scenarios, options.threads, [&](long long i) {
        auto rng = derive_stream(seed, kFamilySpatial, static_cast<std::uint64_t>(i));
        const SpatialScenario s =
            make_scenario(K, params, options.window_rrus, rng);
        auto& acc = partial[static_cast<std::size_t>(i)];
        for (const auto& cluster : s.clusters) {
            long long users = 0;
            for (int r : cluster)
                users += s.users_per_rru[static_cast<std::size_t>(r)];
            acc.add(blocked_fraction(users, T));
        }
    });

    Accumulator total;
    for (const auto& p : partial) total.merge(p);
    return finish(total, seed);
}

McEstimate estimate_blocking_model(int K, int T, const ModelParams& params,
                                   long long samples, std::uint64_t seed,
                                   int threads) {
    if (K < 1) throw std::invalid_argument("cluster size K must be >= 1");
    if (T < 0) throw std::invalid_argument("capacity T must be >= 0");
    if (samples < 1) throw std::invalid_argument("sample count must be >= 1");

    const long long chunks = (samples + kModelChunk - 1) / kModelChunk;
    std::vector<Accumulator> partial(static_cast<std::size_t>(chunks));
    parallel_for(chunks, threads, [&](long long c) {
        auto rng = derive_stream(seed, kFamilyModel, static_cast<std::uint64_t>(c));
        const long long begin = c * kModelChunk;
        const long long end = std::min(samples, begin + kModelChunk);
        auto& acc = partial[static_cast<std::size_t>(c)];
        for (long long i = begin; i < end; ++i)
            acc.add(blocked_fraction(sample_count(K, params, rng), T));
    });

    Accumulator total;
    for (const auto& p : partial) total.merge(p);
    return finish(total, seed);
}

CellAreaReport cell_area_fit(double lambda_r, const CellAreaOptions& options,
                             std::uint64_t seed) {
    if (!(lambda_r > 0.0)) throw std::invalid_argument("lambda_r must be > 0");
    if (options.replications < 1)
        throw std::invalid_argument("replication count must be >= 1");
    if (!(options.window_rrus >= 100.0))
        throw std::invalid_argument(
            "expected RRU count per window must be >= 100");
    if (!(options.points_per_cell >= 16.0))
        throw std::invalid_argument("points_per_cell must be >= 16");

    const Window window =
        Window::square_for_expected_count(options.window_rrus, lambda_r);
    const double target_step =
        std::sqrt(1.0 / (lambda_r * options.points_per_cell));
    const int nx = std::max(1, static_cast<int>(std::llround(window.width / target_step)));
    const int ny = std::max(1, static_cast<int>(std::llround(window.height / target_step)));
    const double hx = window.width / nx;
    const double hy = window.height / ny;

    std::vector<std::vector<double>> per_scenario(
        static_cast<std::size_t>(options.replications));
    parallel_for(options.replications, options.threads, [&](long long i) {
        auto rng = derive_stream(seed, kFamilyAreas, static_cast<std::uint64_t>(i));
        const auto rrus = sample_ppp(lambda_r, window, rng);
        if (rrus.empty()) return;
        NearestRruIndex index(rrus, window);
        std::vector<long long> counts(rrus.size(), 0);
        for (int iy = 0; iy < ny; ++iy) {
            const double y = (iy + 0.5) * hy;
            for (int ix = 0; ix < nx; ++ix) {
                const Point2 q{(ix + 0.5) * hx, y};
                ++counts[static_cast<std::size_t>(index.nearest(q))];
            }
        }
        auto& areas = per_scenario[static_cast<std::size_t>(i)];
        areas.reserve(counts.size());
        for (long long c : counts)
            areas.push_back(static_cast<double>(c) * hx * hy);
    });

    std::vector<double> areas;
    for (const auto& v : per_scenario)
        areas.insert(areas.end(), v.begin(), v.end());

    CellAreaReport report;
    report.cells = static_cast<long long>(areas.size());
    report.grid_step = hx;
    if (areas.empty()) return report;

    Accumulator acc;
    for (double a : areas) acc.add(a);
    report.mean_area = acc.sum / static_cast<double>(acc.n);
    if (acc.n > 1) {
        const double ss = acc.sum_sq - acc.sum * acc.sum / static_cast<double>(acc.n);
        report.variance = std::max(0.0, ss / static_cast<double>(acc.n - 1));
    }
    if (report.mean_area > 0.0)
        report.cv2 = report.variance / (report.mean_area * report.mean_area);

    // KS distance against Gamma(shape 3.5, rate 3.5 * lambda_r).
    std::sort(areas.begin(), areas.end());
    const double shape = 3.5;
    const double rate = 3.5 * lambda_r;
    const double n = static_cast<double>(areas.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < areas.size(); ++i) {
        const double f = areas[i] > 0.0
                       ? boost::math::gamma_p(shape, rate * areas[i])
                       : 0.0;
        ks = std::max(ks, std::max(f - static_cast<double>(i) / n,
                                   static_cast<double>(i + 1) / n - f));
    }
    report.ks_distance = ks;
    return report;
}

}  // namespace fhmux
