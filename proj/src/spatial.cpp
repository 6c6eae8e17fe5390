// SPDX-License-Identifier: Apache-2.0
#include "fhmux/spatial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace fhmux {

Window Window::square_for_expected_count(double target_count, double density) {
    if (!(target_count > 0.0))
        throw std::invalid_argument("target point count must be > 0");
    if (!(density > 0.0))
        throw std::invalid_argument("density must be > 0");
    const double side = std::sqrt(target_count / density);
    return Window{side, side};
}

double torus_dist2(const Point2& p, const Point2& q, const Window& w) {
    double dx = std::fabs(p.x - q.x);
    double dy = std::fabs(p.y - q.y);
    if (dx > 0.5 * w.width) dx = w.width - dx;
    if (dy > 0.5 * w.height) dy = w.height - dy;
    return dx * dx + dy * dy;
}

std::vector<Point2> sample_ppp(double density, const Window& w,
                               std::mt19937_64& rng) {
    if (!(density >= 0.0)) throw std::invalid_argument("density must be >= 0");
    if (!(w.area() > 0.0)) throw std::invalid_argument("window area must be > 0");
    std::vector<Point2> points;
    if (density == 0.0) return points;

    std::poisson_distribution<long long> count_dist(density * w.area());
    const long long count = count_dist(rng);
    points.reserve(static_cast<std::size_t>(count));
    std::uniform_real_distribution<double> ux(0.0, w.width);
    std::uniform_real_distribution<double> uy(0.0, w.height);
    for (long long i = 0; i < count; ++i) points.push_back({ux(rng), uy(rng)});
    return points;
}

NearestRruIndex::NearestRruIndex(const std::vector<Point2>& rrus, const Window& w)
    : points_(rrus), window_(w) {
    if (points_.empty())
        throw std::domain_error("nearest-RRU index requires at least one RRU");
    // Aim for about one point per bucket.
    const double target = std::sqrt(w.area() / static_cast<double>(points_.size()));
    nx_ = std::max(1, static_cast<int>(std::floor(w.width / target)));
    ny_ = std::max(1, static_cast<int>(std::floor(w.height / target)));
    cell_w_ = w.width / nx_;
    cell_h_ = w.height / ny_;
    buckets_.assign(static_cast<std::size_t>(nx_) * ny_, {});
    for (int i = 0; i < static_cast<int>(points_.size()); ++i) {
        int bx = std::min(nx_ - 1, static_cast<int>(points_[i].x / cell_w_));
        int by = std::min(ny_ - 1, static_cast<int>(points_[i].y / cell_h_));
        buckets_[static_cast<std::size_t>(by) * nx_ + bx].push_back(i);
    }
}

void NearestRruIndex::scan_bucket(int bx, int by, const Point2& q,
                                  double& best_d2, int& best_idx) const {
    const auto& bucket = buckets_[static_cast<std::size_t>(by) * nx_ + bx];
    for (int idx : bucket) {
        const double d2 = torus_dist2(q, points_[static_cast<std::size_t>(idx)],
                                      window_);
        if (d2 < best_d2 || (d2 == best_d2 && idx < best_idx)) {
            best_d2 = d2;
            best_idx = idx;
        }
    }
}

int NearestRruIndex::nearest(const Point2& query) const {
    const int qx = std::min(nx_ - 1, std::max(0, static_cast<int>(query.x / cell_w_)));
    const int qy = std::min(ny_ - 1, std::max(0, static_cast<int>(query.y / cell_h_)));
    double best_d2 = std::numeric_limits<double>::infinity();
    int best_idx = std::numeric_limits<int>::max();

    const double cell_min = std::min(cell_w_, cell_h_);
    const int max_ring = std::max(nx_, ny_);
    for (int ring = 0; ring <= max_ring; ++ring) {
        if (2 * ring + 1 >= nx_ && 2 * ring + 1 >= ny_) {
            // Ring covers the whole wrapped grid; finish with a full sweep.
            for (int by = 0; by < ny_; ++by)
                for (int bx = 0; bx < nx_; ++bx)
                    scan_bucket(bx, by, query, best_d2, best_idx);
            break;
        }
        if (ring == 0) {
            scan_bucket(qx, qy, query, best_d2, best_idx);
        } else {
            for (int dx = -ring; dx <= ring; ++dx) {
                for (int dy = -ring; dy <= ring; ++dy) {
                    if (std::max(std::abs(dx), std::abs(dy)) != ring) continue;
                    const int bx = ((qx + dx) % nx_ + nx_) % nx_;
                    const int by = ((qy + dy) % ny_ + ny_) % ny_;
                    scan_bucket(bx, by, query, best_d2, best_idx);
                }
            }
        }
        // A point in ring r+1 or beyond lies at distance >= r * cell_min.
        // Strict comparison keeps equal-distance candidates in later rings
        // eligible, so the lowest-index tie rule matches a full scan.
        const double safe = static_cast<double>(ring) * cell_min;
        if (best_d2 < safe * safe) break;
    }
    return best_idx;
}

std::vector<long long> assign_nearest(const std::vector<Point2>& users,
                                      const std::vector<Point2>& rrus,
                                      const Window& w) {
    if (rrus.empty())
        throw std::domain_error("assign_nearest requires at least one RRU");
    NearestRruIndex index(rrus, w);
    std::vector<long long> counts(rrus.size(), 0);
    for (const auto& u : users)
        ++counts[static_cast<std::size_t>(index.nearest(u))];
    return counts;
}

std::vector<std::vector<int>> form_clusters(int n_rrus, int K,
                                            std::mt19937_64& rng) {
    if (K < 1) throw std::invalid_argument("cluster size K must be >= 1");
    if (n_rrus < K)
        throw std::domain_error("fewer RRUs than the cluster size");
    std::vector<int> order(static_cast<std::size_t>(n_rrus));
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);

    const int n_clusters = n_rrus / K;
    std::vector<std::vector<int>> clusters(static_cast<std::size_t>(n_clusters));
    for (int c = 0; c < n_clusters; ++c) {
        clusters[static_cast<std::size_t>(c)].assign(
            order.begin() + static_cast<std::ptrdiff_t>(c) * K,
            order.begin() + static_cast<std::ptrdiff_t>(c + 1) * K);
    }
    return clusters;
}

SpatialScenario make_scenario(int K, const ModelParams& params,
                              double target_rrus, std::mt19937_64& rng) {
    SpatialScenario s;
    s.window = Window::square_for_expected_count(target_rrus, params.lambda_r);
    s.rru_points = sample_ppp(params.lambda_r, s.window, rng);
    s.user_points = sample_ppp(params.lambda_u, s.window, rng);
    if (!s.rru_points.empty())
        s.users_per_rru = assign_nearest(s.user_points, s.rru_points, s.window);
    if (static_cast<int>(s.rru_points.size()) >= K)
        s.clusters = form_clusters(static_cast<int>(s.rru_points.size()), K, rng);
    return s;
}

}  // namespace fhmux
