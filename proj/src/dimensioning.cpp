// SPDX-License-Identifier: Apache-2.0
#include "fhmux/dimensioning.hpp"

#include <cmath>
#include <stdexcept>

#include "fhmux/blocking.hpp"

namespace fhmux {

namespace {

void check_threshold(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::invalid_argument("blocking threshold must lie in (0,1)");
    if (p <= 1e-300)
        throw std::domain_error(
            "blocking threshold is below the representable blocking floor");
}

}  // namespace

int Dimensioner::min_capacity(int K, double p_threshold) const {
    check_threshold(p_threshold);
    if (K < 1) throw std::invalid_argument("cluster size K must be >= 1");

    auto value = [&](int T) {
        return blocking_probability(K, T, params_).value;
    };
    if (value(0) <= p_threshold) return 0;

    // value(lo) > threshold >= value(hi) once the doubling stops
    int lo = 0;
    int hi = 1;
    while (value(hi) > p_threshold) {
        lo = hi;
        if (hi > (1 << 28))
            throw std::runtime_error("min_capacity search exceeded 2^28");
        hi *= 2;
    }
    while (hi - lo > 1) {
        const int mid = lo + (hi - lo) / 2;
        if (value(mid) <= p_threshold) hi = mid; else lo = mid;
    }
    return hi;
}

int Dimensioner::capacity_baseline(double p_threshold) const {
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = t1_cache_.find(p_threshold);
        if (it != t1_cache_.end()) return it->second;
    }
    const int t1 = min_capacity(1, p_threshold);
    std::lock_guard<std::mutex> lock(cache_mutex_);
    t1_cache_.emplace(p_threshold, t1);
    return t1;
}

double Dimensioner::gain(int K, double p_threshold) const {
    const int t1 = capacity_baseline(p_threshold);
    if (t1 == 0)
        throw std::domain_error(
            "threshold is met with zero capacity; the gain is undefined");
    if (K == 1) return 0.0;
    const int tk = min_capacity(K, p_threshold);
    return 1.0 - static_cast<double>(tk)
               / (static_cast<double>(K) * static_cast<double>(t1));
}

DimensioningResult Dimensioner::dimension(int K, double p_threshold) const {
    const int t1 = capacity_baseline(p_threshold);
    if (t1 == 0)
        throw std::domain_error(
            "threshold is met with zero capacity; the gain is undefined");
    DimensioningResult r;
    r.K = K;
    r.p_threshold = p_threshold;
    r.T_min = (K == 1) ? t1 : min_capacity(K, p_threshold);
    r.t_bar = static_cast<double>(r.T_min) / static_cast<double>(K);
    r.gain = 1.0 - static_cast<double>(r.T_min)
                 / (static_cast<double>(K) * static_cast<double>(t1));
    return r;
}

double Dimensioner::asymptotic_blocking(double t_bar) const {
    if (!(t_bar >= 0.0)) throw std::invalid_argument("t_bar must be >= 0");
    if (params_.mu == 0.0) return 0.0;
    return std::max(0.0, 1.0 - t_bar / params_.mu);
}

double Dimensioner::asymptotic_capacity_per_rru(double p_threshold) const {
    check_threshold(p_threshold);
    return (1.0 - p_threshold) * params_.mu;
}

double Dimensioner::asymptotic_gain(double p_threshold) const {
    const int t1 = capacity_baseline(p_threshold);
    if (t1 == 0)
        throw std::domain_error(
            "threshold is met with zero capacity; the gain is undefined");
    return 1.0 - (1.0 - p_threshold) * params_.mu / static_cast<double>(t1);
}

double Dimensioner::decay_slope(int K) const {
    if (K < 1) throw std::invalid_argument("cluster size K must be >= 1");
    return static_cast<double>(K) * std::log(params_.lam);
}

double Dimensioner::decay_slope_per_capacity() const {
    return std::log(params_.lam);
}

}  // namespace fhmux
