// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "fhmux/params.hpp"

namespace fhmux {

/// Blocking probability of a (K, T) operating point, computed from the
/// truncated series
///
///   P_b = sum_{n > T} P_K{N=n} * (n - T) / n
///
/// together with the closed-form bounds where their validity condition holds.
struct BlockingResult {
    double value = 0.0;                      // truncated-series value, in [0,1]
    std::optional<double> lower_bound;       // pmf(T+1) / ((T+1)(1-lam)^2)
    std::optional<double> upper_bound;       // pmf(T+1) / ((T+1)(1-c)^2), c < 1
    long long truncation_n = 0;              // last series index included
    double tail_bound = 0.0;                 // certified bound on the omitted tail
    bool underflow = false;                  // value fell below 1e-300, reported as 0
};

/// The bounds require T > 2/(Ka-2); with the default a = 3.5 this excludes
/// only T = 0 and the (K, T) = (1, 1) corner. Ka <= 2 never qualifies.
bool bounds_applicable(int K, int T, const ModelParams& params);

/// Exact ratio of consecutive series terms,
///   term(n+1)/term(n) = ((n+1-T)/(n-T)) * (n(n+Ka)/(n+1)^2) * lam,
/// defined for n > T.
double term_ratio_factor(long long n, int K, int T, const ModelParams& params);

/// Certified supremum of term_ratio_factor over all indices >= n_from.
/// The truncation certificate in blocking_probability rests on this.
double term_ratio_sup(long long n_from, int K, int T, const ModelParams& params);

/// c = (T+1)(T+Ka+1) lam / (T+2)^2 -- the common ratio of the geometric
/// majorant behind the upper bound. The bound degenerates when c >= 1.
double geometric_bound_ratio(int K, int T, const ModelParams& params);

/// ((1-c)/(1-lam))^2: the algebraic lower/upper bound ratio. Tends to 1 as
/// T grows, i.e. the two bounds pinch the series value.
double bound_tightness_ratio(int K, int T, const ModelParams& params);

/// Closed-form lower bound; throws std::domain_error outside the validity
/// condition T > 2/(Ka-2) (and at the dismissed (1,1) corner).
double blocking_lower_bound(int K, int T, const ModelParams& params);

/// Closed-form upper bound, or nullopt when the geometric majorant does not
/// converge (c >= 1). Same validity condition as the lower bound.
std::optional<double> blocking_upper_bound(int K, int T, const ModelParams& params);

/// Series evaluation with a certified relative tail bound (default 1e-12).
/// Bounds are attached whenever bounds_applicable(K, T) holds; the (1,1)
/// corner and T = 0 yield a result with both bounds absent.
BlockingResult blocking_probability(int K, int T, const ModelParams& params,
                                    double tail_rel_tol = 1e-12);

}  // namespace fhmux
