// SPDX-License-Identifier: Apache-2.0
#include "fhmux/dist.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace fhmux {

namespace {

// Reentrant log-gamma: glibc's lgamma writes the global signgam, which is a
// data race under concurrent evaluation. All arguments here are positive.
inline double log_gamma(double x) {
#if defined(__GLIBC__) || defined(__unix__)
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

inline void check_args(long long n, int K) {
    if (n < 0) throw std::invalid_argument("count n must be >= 0");
    if (K < 1) throw std::invalid_argument("cluster size K must be >= 1");
}

}  // namespace

double log_pmf(long long n, int K, const ModelParams& params) {
    check_args(n, K);
    const double ka = static_cast<double>(K) * params.a;
    if (params.mu == 0.0) {
        return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    const double dn = static_cast<double>(n);
    return ka * std::log(params.b) + dn * std::log(params.mu)
         + log_gamma(dn + ka) - (ka + dn) * std::log(params.mu + params.b)
         - log_gamma(ka) - log_gamma(dn + 1.0);
}

double pmf(long long n, int K, const ModelParams& params) {
    return std::exp(log_pmf(n, K, params));
}

double mean_count(int K, const ModelParams& params) {
    if (K < 1) throw std::invalid_argument("cluster size K must be >= 1");
    return static_cast<double>(K) * params.mu;
}

PmfCutoff certified_pmf_cutoff(int K, const ModelParams& params,
                               double tail_tol) {
    if (K < 1) throw std::invalid_argument("cluster size K must be >= 1");
    if (!(tail_tol > 0.0)) throw std::invalid_argument("tail_tol must be > 0");
    if (params.mu == 0.0) return {0, 0.0};

    const double ka = static_cast<double>(K) * params.a;
    // pmf(n+1)/pmf(n) = lam * (n + ka) / (n + 1), decreasing in n since ka > 1
    // is not required for correctness: the bound only needs r < 1 at n_star,
    // and r is bounded by its value there for all larger n when ka >= 1, or
    // approaches lam from below when ka < 1.
    for (long long n = 0;; ++n) {
        const double r = params.lam * (static_cast<double>(n) + ka)
                       / (static_cast<double>(n) + 1.0);
        const double r_sup = ka >= 1.0 ? r : params.lam;
        if (r_sup < 1.0) {
            const double bound = pmf(n, K, params) * r_sup / (1.0 - r_sup);
            if (bound < tail_tol) return {n, bound};
        }
        if (n > (1LL << 40))
            throw std::runtime_error("certified_pmf_cutoff: no convergence");
    }
}

long long sample_count(int K, const ModelParams& params, std::mt19937_64& rng) {
    if (K < 1) throw std::invalid_argument("cluster size K must be >= 1");
    if (params.lambda_u == 0.0) return 0;
    std::gamma_distribution<double> coverage(
        static_cast<double>(K) * params.a, 1.0 / (params.b * params.lambda_r));
    const double area = coverage(rng);
    std::poisson_distribution<long long> users(params.lambda_u * area);
    return users(rng);
}

}  // namespace fhmux
