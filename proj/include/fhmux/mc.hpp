// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "fhmux/params.hpp"
#include "fhmux/spatial.hpp"

namespace fhmux {

/// Monte Carlo point estimate with its standard error.
struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;     // sample sd / sqrt(replications)
    long long replications = 0; // independent cluster (or N) samples used
    std::uint64_t seed = 0;
};

struct SpatialMcOptions {
    long long scenarios = 1000;   // independent window draws
    double window_rrus = 1000.0;  // expected RRU count per window
    int threads = 1;
};

/// Spatial ground truth for the blocking probability: PPP RRUs and users in
/// a toroidal window, nearest-RRU assignment, random clusters of size K, and
/// the per-cluster blocked fraction max(0, n-T)/n averaged over every
/// cluster of every scenario. Identical (seed, parameters) give identical
/// estimates regardless of the thread count.
McEstimate estimate_blocking_spatial(int K, int T, const ModelParams& params,
                                     const SpatialMcOptions& options,
                                     std::uint64_t seed);

/// Model-level companion: samples N directly from the cluster user-count
/// law (no geometry), isolating spatial effects from the mixture itself.
McEstimate estimate_blocking_model(int K, int T, const ModelParams& params,
                                   long long samples, std::uint64_t seed,
                                   int threads = 1);

struct CellAreaOptions {
    double window_rrus = 1000.0;   // expected RRU count per window
    long long replications = 100;  // independent window draws
    double points_per_cell = 800;  // integration grid density target
    int threads = 1;
};

/// Moment report for empirical Voronoi cell areas (toroidal metric, grid
/// integration) against the gamma law with shape 3.5 and rate 3.5*lambda_r.
struct CellAreaReport {
    double mean_area = 0.0;
    double variance = 0.0;
    double cv2 = 0.0;          // variance / mean^2; the gamma law gives 1/3.5
    double ks_distance = 0.0;  // Kolmogorov-Smirnov distance to the gamma fit
    long long cells = 0;
    double grid_step = 0.0;
};

CellAreaReport cell_area_fit(double lambda_r, const CellAreaOptions& options,
                             std::uint64_t seed);

}  // namespace fhmux
