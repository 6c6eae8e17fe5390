// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "fhmux/rng.hpp"
#include "fhmux/spatial.hpp"

namespace {

// Exhaustive scan with the same lowest-index tie rule as the grid index.
int nearest_brute(const fhmux::Point2& q, const std::vector<fhmux::Point2>& pts,
                  const fhmux::Window& w) {
    int best = -1;
    double best_d2 = HUGE_VAL;
    for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
        const double d2 =
            fhmux::torus_dist2(q, pts[static_cast<std::size_t>(i)], w);
        if (d2 < best_d2) {
            best_d2 = d2;
            best = i;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("window sizing hits the expected point count") {
    const auto w = fhmux::Window::square_for_expected_count(1000.0, 1.0);
    CHECK(w.width == doctest::Approx(w.height));
    CHECK(w.area() == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK_THROWS_AS(fhmux::Window::square_for_expected_count(0.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("toroidal distance wraps both axes") {
    const fhmux::Window w{10.0, 10.0};
    CHECK(fhmux::torus_dist2({0.5, 5.0}, {9.5, 5.0}, w) ==
          doctest::Approx(1.0));
    CHECK(fhmux::torus_dist2({5.0, 0.5}, {5.0, 9.5}, w) ==
          doctest::Approx(1.0));
    CHECK(fhmux::torus_dist2({1.0, 1.0}, {2.0, 2.0}, w) ==
          doctest::Approx(2.0));
    CHECK(fhmux::torus_dist2({0.0, 0.0}, {5.0, 5.0}, w) ==
          doctest::Approx(50.0));  // the worst case on this torus
}

TEST_CASE("point process count matches its intensity") {
    const fhmux::Window w{20.0, 20.0};
    auto rng = fhmux::derive_stream(7, 0);
    const int reps = 200;
    const double density = 2.5;
    double total = 0.0;
    for (int i = 0; i < reps; ++i)
        total += static_cast<double>(fhmux::sample_ppp(density, w, rng).size());
    const double mean = total / reps;
    const double expected = density * w.area();  // 1000
    const double se = std::sqrt(expected / reps);
    CHECK(std::fabs(mean - expected) < 4.0 * se);

    CHECK(fhmux::sample_ppp(0.0, w, rng).empty());
}

TEST_CASE("grid index agrees with the brute-force scan everywhere") {
    for (std::uint64_t scenario = 0; scenario < 10; ++scenario) {
        auto rng = fhmux::derive_stream(99, 0, scenario);
        const auto w = fhmux::Window::square_for_expected_count(100.0, 1.0);
        const auto rrus = fhmux::sample_ppp(1.0, w, rng);
        if (rrus.empty()) continue;
        const fhmux::NearestRruIndex index(rrus, w);
        const auto queries = fhmux::sample_ppp(5.0, w, rng);
        for (const auto& q : queries)
            CHECK(index.nearest(q) == nearest_brute(q, rrus, w));
    }
}

TEST_CASE("ties resolve to the lowest index") {
    const fhmux::Window w{8.0, 8.0};
    // Two points equidistant from the query, plus noise off to the side.
    const std::vector<fhmux::Point2> pts = {
        {1.0, 3.0}, {3.0, 3.0}, {6.0, 6.0}};
    const fhmux::NearestRruIndex index(pts, w);
    CHECK(index.nearest({2.0, 3.0}) == 0);
    CHECK(nearest_brute({2.0, 3.0}, pts, w) == 0);
}

TEST_CASE("tie in a later-scanned bucket still wins on index") {
    const fhmux::Window w{12.0, 12.0};
    // Ten fillers far from the query force a multi-bucket grid; the two
    // tied points at distance 4 sit in different ring-1 buckets, with the
    // lower index in the bucket the ring scan reaches second.
    std::vector<fhmux::Point2> pts;
    for (int i = 0; i < 10; ++i)
        pts.push_back({0.25 + 0.05 * i, 0.5});
    pts.push_back({10.0, 6.0});  // index 10, tied
    pts.push_back({2.0, 6.0});   // index 11, tied, found first
    const fhmux::NearestRruIndex index(pts, w);
    const fhmux::Point2 q{6.0, 6.0};
    CHECK(fhmux::torus_dist2(q, pts[10], w) ==
          fhmux::torus_dist2(q, pts[11], w));
    CHECK(nearest_brute(q, pts, w) == 10);
    CHECK(index.nearest(q) == 10);
}

TEST_CASE("user assignment conserves the user count") {
    auto rng = fhmux::derive_stream(11, 0);
    const auto w = fhmux::Window::square_for_expected_count(200.0, 1.0);
    const auto rrus = fhmux::sample_ppp(1.0, w, rng);
    const auto users = fhmux::sample_ppp(5.0, w, rng);
    REQUIRE(!rrus.empty());
    const auto counts = fhmux::assign_nearest(users, rrus, w);
    CHECK(counts.size() == rrus.size());
    CHECK(std::accumulate(counts.begin(), counts.end(), 0LL) ==
          static_cast<long long>(users.size()));
    CHECK_THROWS_AS(fhmux::assign_nearest(users, {}, w), std::domain_error);
}

TEST_CASE("clusters partition a subset of RRUs into exact K-groups") {
    auto rng = fhmux::derive_stream(5, 0);
    const auto clusters = fhmux::form_clusters(100, 7, rng);
    CHECK(clusters.size() == 14);  // floor(100/7)
    std::vector<int> seen;
    for (const auto& c : clusters) {
        CHECK(c.size() == 7);
        for (int idx : c) {
            CHECK(idx >= 0);
            CHECK(idx < 100);
            seen.push_back(idx);
        }
    }
    std::sort(seen.begin(), seen.end());
    CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());

    CHECK_THROWS_AS(fhmux::form_clusters(3, 7, rng), std::domain_error);
    auto rng_a = fhmux::derive_stream(5, 0);
    auto rng_b = fhmux::derive_stream(5, 0);
    CHECK(fhmux::form_clusters(50, 5, rng_a) ==
          fhmux::form_clusters(50, 5, rng_b));
}

TEST_CASE("scenario assembly is coherent") {
    auto rng = fhmux::derive_stream(3, 0);
    const auto p = fhmux::ModelParams::make(5.0, 1.0);
    const auto s = fhmux::make_scenario(4, p, 300.0, rng);
    CHECK(s.window.area() == doctest::Approx(300.0));
    CHECK(s.users_per_rru.size() == s.rru_points.size());
    CHECK(std::accumulate(s.users_per_rru.begin(), s.users_per_rru.end(), 0LL)
          == static_cast<long long>(s.user_points.size()));
    REQUIRE(!s.clusters.empty());
    CHECK(s.clusters.size() ==
          s.rru_points.size() / 4);
    for (const auto& c : s.clusters) CHECK(c.size() == 4);
}
