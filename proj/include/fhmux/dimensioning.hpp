// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <mutex>

#include "fhmux/params.hpp"

namespace fhmux {

struct DimensioningResult {
    int K = 1;
    double p_threshold = 0.0;
    int T_min = 0;        // smallest capacity meeting the threshold
    double t_bar = 0.0;   // T_min / K, equivalent per-RRU capacity
    double gain = 0.0;    // relative per-RRU saving vs the K = 1 baseline
};

/// Minimum-capacity search and multiplexing-gain evaluation for one
/// parameter set. The K = 1 baseline capacity is cached per threshold and
/// the cache is safe under concurrent use; everything else is pure.
class Dimensioner {
public:
    explicit Dimensioner(ModelParams params) : params_(params) {}

    /// Smallest T >= 0 with blocking_probability(K, T) <= p_threshold.
    /// Monotonicity of the series in T justifies doubling + binary search.
    /// Thresholds at or below the representable blocking floor (1e-300) are
    /// refused rather than extrapolated.
    int min_capacity(int K, double p_threshold) const;

    /// G_K = 1 - T_K / (K * T_1) at the same threshold; gain(1) = 0.
    double gain(int K, double p_threshold) const;

    DimensioningResult dimension(int K, double p_threshold) const;

    /// Large-K limit of the blocking probability at fixed per-RRU capacity
    /// t_bar: max(0, 1 - t_bar/mu).
    double asymptotic_blocking(double t_bar) const;

    /// Large-K limit of T_K/K: (1 - p_threshold) * mu.
    double asymptotic_capacity_per_rru(double p_threshold) const;

    /// G_inf = 1 - (1 - p_threshold) * mu / T_1(p_threshold).
    double asymptotic_gain(double p_threshold) const;

    /// Large-T slope of ln P_b with respect to t_bar = T/K: K * ln(lam).
    double decay_slope(int K) const;

    /// The same limit per unit of T rather than per unit of t_bar: ln(lam).
    double decay_slope_per_capacity() const;

    const ModelParams& params() const { return params_; }

private:
    int capacity_baseline(double p_threshold) const;  // cached T_1

    ModelParams params_;
    mutable std::mutex cache_mutex_;
    mutable std::map<double, int> t1_cache_;
};

}  // namespace fhmux
