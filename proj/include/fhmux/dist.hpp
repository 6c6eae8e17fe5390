// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <random>

#include "fhmux/params.hpp"

namespace fhmux {

/// ln P_K{N = n} for the cluster user count N, the gamma-Poisson mixture
///
///   P_K{N=n} = b^{Ka} mu^n Gamma(n+Ka) / ((mu+b)^{Ka+n} Gamma(Ka) n!)
///
/// evaluated entirely in log space so it stays finite for n up to 1e6 and
/// beyond. lambda_u = 0 collapses to a point mass at n = 0 (returns 0 at
/// n = 0, -inf otherwise).
double log_pmf(long long n, int K, const ModelParams& params);

/// exp(log_pmf); underflows to 0 for deep-tail n instead of raising.
double pmf(long long n, int K, const ModelParams& params);

/// E[N] = K * mu.
double mean_count(int K, const ModelParams& params);

/// Certified truncation point for sums over the PMF. Beyond the returned
/// index the tail mass is bounded by a geometric series with ratio
/// r = lam * (n + Ka) / (n + 1) < 1, so
///   sum_{m > n_star} P{N=m} <= pmf(n_star) * r / (1 - r) = tail_bound < tol.
struct PmfCutoff {
    long long n_star;
    double tail_bound;
};
PmfCutoff certified_pmf_cutoff(int K, const ModelParams& params,
                               double tail_tol = 1e-12);

/// Draw N by composition: total coverage ~ Gamma(Ka, rate b*lambda_r),
/// then N ~ Poisson(lambda_u * coverage). The marginal law equals pmf().
/// The stream must be exclusively held by the caller.
long long sample_count(int K, const ModelParams& params, std::mt19937_64& rng);

}  // namespace fhmux
