// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <doctest.h>

#include "fhmux/blocking.hpp"
#include "fhmux/dimensioning.hpp"

namespace {

fhmux::ModelParams defaults() { return fhmux::ModelParams::make(5.0, 1.0); }

}  // namespace

TEST_CASE("minimum capacities at the 5% threshold") {
    const fhmux::Dimensioner dim(defaults());
    CHECK(dim.min_capacity(1, 0.05) == 8);
    CHECK(dim.min_capacity(3, 0.05) == 19);
    CHECK(dim.min_capacity(5, 0.05) == 29);
    CHECK(dim.min_capacity(10, 0.05) == 53);
    CHECK(dim.min_capacity(20, 0.05) == 101);
    CHECK(dim.min_capacity(50, 0.05) == 243);
    CHECK(dim.min_capacity(100, 0.05) == 480);
}

TEST_CASE("minimum capacity brackets the threshold") {
    const fhmux::Dimensioner dim(defaults());
    const auto p = defaults();
    for (int k : {1, 4, 9}) {
        for (double th : {0.3, 0.05, 0.001}) {
            const int t = dim.min_capacity(k, th);
            CHECK(fhmux::blocking_probability(k, t, p).value <= th);
            if (t > 0)
                CHECK(fhmux::blocking_probability(k, t - 1, p).value > th);
        }
    }
}

TEST_CASE("multiplexing gains at the 5% threshold") {
    const fhmux::Dimensioner dim(defaults());
    CHECK(dim.gain(1, 0.05) == 0.0);
    CHECK(dim.gain(3, 0.05) == doctest::Approx(5.0 / 24.0).epsilon(1e-12));
    CHECK(dim.gain(5, 0.05) == doctest::Approx(0.275).epsilon(1e-12));
    CHECK(dim.gain(10, 0.05) == doctest::Approx(0.3375).epsilon(1e-12));
    CHECK(dim.gain(20, 0.05) == doctest::Approx(0.36875).epsilon(1e-12));
    CHECK(dim.gain(50, 0.05) == doctest::Approx(0.3925).epsilon(1e-12));
    CHECK(dim.gain(100, 0.05) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("dimension bundles the derived quantities consistently") {
    const fhmux::Dimensioner dim(defaults());
    const auto r = dim.dimension(5, 0.05);
    CHECK(r.K == 5);
    CHECK(r.p_threshold == 0.05);
    CHECK(r.T_min == 29);
    CHECK(r.t_bar == doctest::Approx(5.8).epsilon(1e-15));
    CHECK(r.gain == doctest::Approx(0.275).epsilon(1e-12));
}

TEST_CASE("asymptotic limits") {
    const fhmux::Dimensioner dim(defaults());
    CHECK(dim.asymptotic_capacity_per_rru(0.05) ==
          doctest::Approx(4.75).epsilon(1e-15));
    CHECK(dim.asymptotic_gain(0.05) ==
          doctest::Approx(0.40625).epsilon(1e-13));
    CHECK(dim.asymptotic_blocking(4.0) == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(dim.asymptotic_blocking(5.0) == 0.0);
    CHECK(dim.asymptotic_blocking(6.0) == 0.0);

    const auto p = defaults();
    CHECK(dim.decay_slope_per_capacity() ==
          doctest::Approx(std::log(p.lam)).epsilon(1e-15));
    CHECK(dim.decay_slope(3) ==
          doctest::Approx(3.0 * std::log(p.lam)).epsilon(1e-15));
}

TEST_CASE("loose thresholds can be met with zero capacity") {
    const fhmux::Dimensioner dim(defaults());
    // blocking(1, 0) is about 0.9552, below a 0.96 threshold.
    CHECK(dim.min_capacity(1, 0.96) == 0);
    // The gain baseline degenerates when the K=1 link needs no capacity.
    CHECK_THROWS_AS(dim.gain(5, 0.96), std::domain_error);
    CHECK_THROWS_AS(dim.asymptotic_gain(0.96), std::domain_error);
}

TEST_CASE("threshold validation") {
    const fhmux::Dimensioner dim(defaults());
    CHECK_THROWS_AS(dim.min_capacity(1, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(dim.min_capacity(1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(dim.min_capacity(1, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(dim.min_capacity(1, 1e-310), std::domain_error);
    CHECK_THROWS_AS(dim.min_capacity(0, 0.05), std::invalid_argument);
}

TEST_CASE("per-RRU capacity requirement shrinks with clustering") {
    const fhmux::Dimensioner dim(defaults());
    double prev = 1e300;
    for (int k : {1, 3, 5, 10, 20, 50, 100}) {
        const double t_bar = static_cast<double>(dim.min_capacity(k, 0.05)) / k;
        CHECK(t_bar <= prev);
        CHECK(t_bar >= 4.75);
        prev = t_bar;
    }
}
