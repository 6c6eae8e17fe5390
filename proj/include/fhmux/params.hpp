// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fhmux {

/// Stochastic-geometry parameter set for the RRU/user point processes.
///
/// RRUs and users are homogeneous PPPs with densities lambda_r and lambda_u.
/// The coverage area of a single RRU is gamma-distributed with shape `a` and
/// rate `b * lambda_r`; a cluster of K RRUs has total coverage
/// Gamma(K*a, rate b*lambda_r). The derived fields are kept consistent with
/// the stored densities:
///   mu  = lambda_u / lambda_r   (mean users per RRU)
///   lam = mu / (mu + b)         (geometric ratio of the user-count PMF tail)
struct ModelParams {
    double lambda_u = 5.0;
    double lambda_r = 1.0;
    double a = 3.5;
    double b = 3.5;
    double mu = 5.0;
    double lam = 5.0 / 8.5;

    /// Validating factory. lambda_u = 0 is a supported degenerate case
    /// (no users, point mass at N = 0); lambda_r must be positive.
    static ModelParams make(double lambda_u, double lambda_r,
                            double a = 3.5, double b = 3.5) {
        if (!(lambda_u >= 0.0) || !std::isfinite(lambda_u))
            throw std::invalid_argument("lambda_u must be finite and >= 0");
        if (!(lambda_r > 0.0) || !std::isfinite(lambda_r))
            throw std::invalid_argument("lambda_r must be finite and > 0");
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::invalid_argument("gamma shape a must be finite and > 0");
        if (!(b > 0.0) || !std::isfinite(b))
            throw std::invalid_argument("gamma rate b must be finite and > 0");
        ModelParams p;
        p.lambda_u = lambda_u;
        p.lambda_r = lambda_r;
        p.a = a;
        p.b = b;
        p.mu = lambda_u / lambda_r;
        p.lam = p.mu / (p.mu + b);
        return p;
    }
};

/// One (cluster size, shared capacity) operating point.
struct ClusterConfig {
    int K = 1;        // RRUs per cluster
    int T = 0;        // capacity in simultaneous users on the shared link

    static ClusterConfig make(int K, int T) {
        if (K < 1) throw std::invalid_argument("cluster size K must be >= 1");
        if (T < 0) throw std::invalid_argument("capacity T must be >= 0");
        return ClusterConfig{K, T};
    }
};

}  // namespace fhmux
