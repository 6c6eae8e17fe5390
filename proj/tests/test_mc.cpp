// SPDX-License-Identifier: Apache-2.0
#include <cmath>

#include <doctest.h>

#include "fhmux/blocking.hpp"
#include "fhmux/mc.hpp"

namespace {

fhmux::ModelParams defaults() { return fhmux::ModelParams::make(5.0, 1.0); }

}  // namespace

TEST_CASE("model-level estimate agrees with the analytical series") {
    const auto p = defaults();
    const double analytic = fhmux::blocking_probability(1, 8, p).value;
    const auto e = fhmux::estimate_blocking_model(1, 8, p, 400'000, 42);
    CHECK(e.replications == 400'000);
    CHECK(e.std_error > 0.0);
    CHECK(std::fabs(e.mean - analytic) < 4.0 * e.std_error);
}

TEST_CASE("estimates do not depend on the thread count") {
    const auto p = defaults();
    const auto serial = fhmux::estimate_blocking_model(5, 29, p, 150'000, 7, 1);
    const auto parallel =
        fhmux::estimate_blocking_model(5, 29, p, 150'000, 7, 3);
    CHECK(serial.mean == parallel.mean);  // bit-exact by construction
    CHECK(serial.std_error == parallel.std_error);

    fhmux::SpatialMcOptions o;
    o.scenarios = 60;
    o.window_rrus = 300.0;
    o.threads = 1;
    const auto s1 = fhmux::estimate_blocking_spatial(5, 29, p, o, 7);
    o.threads = 4;
    const auto s4 = fhmux::estimate_blocking_spatial(5, 29, p, o, 7);
    CHECK(s1.mean == s4.mean);
    CHECK(s1.std_error == s4.std_error);
    CHECK(s1.replications == s4.replications);
}

TEST_CASE("spatial estimate lands near the analytical value") {
    const auto p = defaults();
    fhmux::SpatialMcOptions o;
    o.scenarios = 150;
    o.window_rrus = 500.0;
    const auto e = fhmux::estimate_blocking_spatial(1, 8, p, o, 42);
    const double analytic = fhmux::blocking_probability(1, 8, p).value;
    CHECK(e.replications > 50'000);
    // Wide gate: the analytic model idealizes the spatial cell-area law.
    CHECK(std::fabs(e.mean - analytic) / analytic < 0.25);
}

TEST_CASE("no users means empty clusters and zero estimates") {
    const auto p = fhmux::ModelParams::make(0.0, 1.0);
    const auto m = fhmux::estimate_blocking_model(2, 4, p, 10'000, 1);
    CHECK(m.mean == 0.0);
    CHECK(m.std_error == 0.0);
    fhmux::SpatialMcOptions o;
    o.scenarios = 10;
    o.window_rrus = 100.0;
    const auto s = fhmux::estimate_blocking_spatial(2, 4, p, o, 1);
    CHECK(s.mean == 0.0);
    CHECK(s.replications > 0);
}

TEST_CASE("cell areas follow the gamma law closely") {
    fhmux::CellAreaOptions o;
    o.replications = 8;
    o.window_rrus = 400.0;
    o.points_per_cell = 300.0;
    const auto r = fhmux::cell_area_fit(1.0, o, 42);
    CHECK(r.cells > 2000);
    CHECK(r.grid_step > 0.0);
    CHECK(r.mean_area == doctest::Approx(1.0).epsilon(0.05));
    CHECK(r.cv2 == doctest::Approx(1.0 / 3.5).epsilon(0.2));
    CHECK(r.ks_distance < 0.1);
    CHECK(r.ks_distance > 0.0);
}

TEST_CASE("estimator argument validation") {
    const auto p = defaults();
    CHECK_THROWS_AS(fhmux::estimate_blocking_model(0, 4, p, 100, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(fhmux::estimate_blocking_model(1, -1, p, 100, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(fhmux::estimate_blocking_model(1, 4, p, 0, 1),
                    std::invalid_argument);
    fhmux::SpatialMcOptions o;
    o.scenarios = 0;
    CHECK_THROWS_AS(fhmux::estimate_blocking_spatial(1, 4, p, o, 1),
                    std::invalid_argument);
    fhmux::CellAreaOptions c;
    c.window_rrus = 50.0;  // too small for a meaningful tessellation
    CHECK_THROWS_AS(fhmux::cell_area_fit(1.0, c, 1), std::invalid_argument);
    CHECK_THROWS_AS(fhmux::cell_area_fit(0.0, {}, 1), std::invalid_argument);
}
