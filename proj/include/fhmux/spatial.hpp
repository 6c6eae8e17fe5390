// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <vector>

#include "fhmux/params.hpp"

namespace fhmux {

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

/// Finite observation window [0,width) x [0,height) with toroidal wrapping.
/// Wrapping removes window-edge effects: the infinite-plane PPP has no
/// boundary, and edge cells would otherwise bias Voronoi areas.
struct Window {
    double width = 1.0;
    double height = 1.0;

    double area() const { return width * height; }

    static Window square_for_expected_count(double target_count, double density);
};

/// Squared toroidal distance between two points of the window.
double torus_dist2(const Point2& p, const Point2& q, const Window& w);

/// Homogeneous PPP draw: Poisson(density * area) points, i.i.d. uniform.
std::vector<Point2> sample_ppp(double density, const Window& w,
                               std::mt19937_64& rng);

/// Uniform bucket grid over the torus for nearest-RRU queries.
/// Ties resolve to the lowest RRU index, matching the brute-force scan.
class NearestRruIndex {
public:
    NearestRruIndex(const std::vector<Point2>& rrus, const Window& w);

    int nearest(const Point2& query) const;
    int size() const { return static_cast<int>(points_.size()); }

private:
    void scan_bucket(int bx, int by, const Point2& q,
                     double& best_d2, int& best_idx) const;

    std::vector<Point2> points_;
    Window window_;
    int nx_ = 1;
    int ny_ = 1;
    double cell_w_ = 1.0;
    double cell_h_ = 1.0;
    std::vector<std::vector<int>> buckets_;
};

/// Assigns every user to its nearest RRU (toroidal metric) and returns the
/// per-RRU user counts. Throws std::domain_error when rrus is empty.
std::vector<long long> assign_nearest(const std::vector<Point2>& users,
                                      const std::vector<Point2>& rrus,
                                      const Window& w);

/// Uniformly random partition of RRU indices 0..n_rrus-1 into
/// floor(n_rrus/K) disjoint groups of exactly K; leftover RRUs are excluded.
/// Throws std::domain_error when n_rrus < K.
std::vector<std::vector<int>> form_clusters(int n_rrus, int K,
                                            std::mt19937_64& rng);

/// One spatial realization: points, assignment and clusters together.
struct SpatialScenario {
    Window window;
    std::vector<Point2> rru_points;
    std::vector<Point2> user_points;
    std::vector<long long> users_per_rru;
    std::vector<std::vector<int>> clusters;
};

SpatialScenario make_scenario(int K, const ModelParams& params,
                              double target_rrus, std::mt19937_64& rng);

}  // namespace fhmux
