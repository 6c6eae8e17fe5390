// SPDX-License-Identifier: Apache-2.0
#include "fhmux/blocking.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fhmux/dist.hpp"

namespace fhmux {

namespace {

constexpr double kValueFloor = 1e-300;

// a_n^K = n (n + Ka) / (n+1)^2, the non-geometric part of the term ratio.
// For Ka > 2 it peaks at n = Ka/(Ka-2) and decreases on either side; for
// Ka <= 2 it increases toward 1 from below.
inline double shape_factor(double n, double ka) {
    return n * (n + ka) / ((n + 1.0) * (n + 1.0));
}

inline void check_point(int K, int T) {
    if (K < 1) throw std::invalid_argument("cluster size K must be >= 1");
    if (T < 0) throw std::invalid_argument("capacity T must be >= 0");
}

void require_bounds_applicable(int K, int T, const ModelParams& params) {
    if (!bounds_applicable(K, T, params)) {
        throw std::domain_error(
            "closed-form bounds require T > 2/(Ka-2) with Ka > 2, and exclude "
            "(K,T) = (1,1); got K=" + std::to_string(K) +
            ", T=" + std::to_string(T) +
            ", Ka=" + std::to_string(K * params.a));
    }
}

}  // namespace

bool bounds_applicable(int K, int T, const ModelParams& params) {
    check_point(K, T);
    const double ka = static_cast<double>(K) * params.a;
    if (ka <= 2.0) return false;
    if (K == 1 && T == 1) return false;
    return static_cast<double>(T) > 2.0 / (ka - 2.0);
}

double term_ratio_factor(long long n, int K, int T, const ModelParams& params) {
    check_point(K, T);
    if (n <= T) throw std::invalid_argument("term ratio defined for n > T only");
    const double ka = static_cast<double>(K) * params.a;
    const double dn = static_cast<double>(n);
    const double weight = (dn + 1.0 - T) / (dn - T);
    return weight * shape_factor(dn, ka) * params.lam;
}

double term_ratio_sup(long long n_from, int K, int T, const ModelParams& params) {
    check_point(K, T);
    if (n_from <= T) throw std::invalid_argument("tail starts beyond T");
    const double ka = static_cast<double>(K) * params.a;
    const double dn = static_cast<double>(n_from);
    // Both factors are bounded separately: the weight (m+1-T)/(m-T) decreases
    // in m, and the shape factor is maximized either at n_from (past its peak)
    // or near the peak Ka/(Ka-2) itself.
    double sup_shape;
    if (ka > 2.0) {
        const double peak = ka / (ka - 2.0);
        if (dn >= peak) {
            sup_shape = shape_factor(dn, ka);
        } else {
            sup_shape = 0.0;
            const long long last = static_cast<long long>(std::ceil(peak)) + 1;
            for (long long m = n_from; m <= last; ++m)
                sup_shape = std::max(sup_shape,
                                     shape_factor(static_cast<double>(m), ka));
        }
    } else {
        sup_shape = 1.0;  // increasing toward 1 from below
    }
    const double weight = (dn + 1.0 - T) / (dn - T);
    return weight * sup_shape * params.lam;
}

double geometric_bound_ratio(int K, int T, const ModelParams& params) {
    check_point(K, T);
    const double ka = static_cast<double>(K) * params.a;
    const double t = static_cast<double>(T);
    return (t + 1.0) * (t + ka + 1.0) * params.lam / ((t + 2.0) * (t + 2.0));
}

double bound_tightness_ratio(int K, int T, const ModelParams& params) {
    const double c = geometric_bound_ratio(K, T, params);
    const double q = (1.0 - c) / (1.0 - params.lam);
    return q * q;
}

double blocking_lower_bound(int K, int T, const ModelParams& params) {
    require_bounds_applicable(K, T, params);
    const double q = 1.0 - params.lam;
    return pmf(T + 1, K, params) / ((static_cast<double>(T) + 1.0) * q * q);
}

std::optional<double> blocking_upper_bound(int K, int T, const ModelParams& params) {
    require_bounds_applicable(K, T, params);
    const double c = geometric_bound_ratio(K, T, params);
    if (c >= 1.0) return std::nullopt;  // geometric majorant diverges
    const double q = 1.0 - c;
    return pmf(T + 1, K, params) / ((static_cast<double>(T) + 1.0) * q * q);
}

BlockingResult blocking_probability(int K, int T, const ModelParams& params,
                                    double tail_rel_tol) {
    check_point(K, T);
    if (!(tail_rel_tol > 0.0))
        throw std::invalid_argument("tail_rel_tol must be > 0");

    BlockingResult result;
    if (params.mu == 0.0) {
        result.truncation_n = T;
        if (bounds_applicable(K, T, params)) {
            result.lower_bound = 0.0;
            result.upper_bound = 0.0;
        }
        return result;
    }

    // Forward accumulation: terms increase up to the PMF mode and then decay
    // at least geometrically, so the certified stop never triggers early.
    double acc = 0.0;
    long long n = T + 1;
    const long long hard_cap = T + 1 + (1LL << 26);
    for (;; ++n) {
        if (n > hard_cap)
            throw std::runtime_error("blocking series failed to converge");
        const double term = pmf(n, K, params)
                          * (static_cast<double>(n - T) / static_cast<double>(n));
        acc += term;
        const double r = term_ratio_sup(n, K, T, params);
        if (r < 1.0) {
            const double tail = term * r / (1.0 - r);
            if (tail < tail_rel_tol * std::max(acc, kValueFloor)) {
                result.tail_bound = tail;
                break;
            }
        }
    }
    result.truncation_n = n;
    if (acc < kValueFloor) {
        result.value = 0.0;
        result.underflow = true;
    } else {
        result.value = std::min(acc, 1.0);
    }

    if (bounds_applicable(K, T, params)) {
        result.lower_bound = blocking_lower_bound(K, T, params);
        result.upper_bound = blocking_upper_bound(K, T, params);
    }
    return result;
}

}  // namespace fhmux
