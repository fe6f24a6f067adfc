// SPDX-License-Identifier: Apache-2.0
//
// mediumband: link-level simulation of mediumband wireless channels
// Copyright (C) 2026 The mediumband authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "mediumband/channel.hpp"
#include "mediumband/detail/pulse_grid.hpp"
#include "mediumband/errors.hpp"

using namespace mediumband;
using Catch::Approx;

namespace {

// Textbook closed form without any limit handling.
double raw_raised_cosine(double beta, double x) {
    const double pi = std::numbers::pi;
    return std::sin(pi * x) / (pi * x) * std::cos(pi * beta * x) /
           (1.0 - 4.0 * beta * beta * x * x);
}

} // namespace

TEST_CASE("raised cosine peak, Nyquist zeros and truncation", "[pulse]") {
    const PulseShape p;
    CHECK(composite_pulse(p, 0.0) == 1.0);
    for (int k = -6; k <= 6; ++k)
        if (k != 0) CHECK(composite_pulse(p, k) == 0.0);
    CHECK(composite_pulse(p, 6.0001) == 0.0);
    CHECK(composite_pulse(p, -7.5) == 0.0);
    for (double t : {0.13, 0.5, 1.7, 3.3, 5.9})
        CHECK(composite_pulse(p, t) == Approx(composite_pulse(p, -t)).margin(1e-16));
    CHECK(composite_pulse(p, 0.37) == Approx(raw_raised_cosine(0.22, 0.37)).epsilon(1e-14));
}

TEST_CASE("symbol period scales the time axis", "[pulse]") {
    PulseShape p;
    p.symbol_period = 2.5e-6;
    CHECK(composite_pulse(p, 2.5e-6) == 0.0);
    CHECK(composite_pulse(p, 0.4 * 2.5e-6) ==
          Approx(composite_pulse(PulseShape{}, 0.4)).epsilon(1e-13));
}

TEST_CASE("singular points return the analytic limit", "[pulse]") {
    for (double beta : {0.22, 0.35, 0.5, 1.0}) {
        PulseShape p;
        p.rolloff = beta;
        p.span = 16;
        const double ts = 1.0 / (2.0 * beta);
        const double value = composite_pulse(p, ts);
        REQUIRE(std::isfinite(value));
        // Symmetric numeric neighbourhood of the removable singularity.
        for (double delta : {1e-9, 1e-6}) {
            const double around =
                0.5 * (raw_raised_cosine(beta, ts - delta) + raw_raised_cosine(beta, ts + delta));
            CHECK(value == Approx(around).margin(delta == 1e-9 ? 1e-6 : 1e-10));
        }
        CHECK(composite_pulse(p, -ts) == value);
    }
}

TEST_CASE("invalid pulse shapes are configuration errors", "[pulse]") {
    PulseShape p;
    p.rolloff = 0.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = {};
    p.span = 1;
    CHECK_THROWS_AS(p.validate(), ConfigError);
    p = {};
    p.symbol_period = -1.0;
    CHECK_THROWS_AS(p.validate(), ConfigError);
}

TEST_CASE("percentage delay spread", "[pulse]") {
    CHECK(pds(0.2, 1.0) == Approx(20.0));
    CHECK(pds(0.05, 1.0) == Approx(5.0));
    CHECK(pds(0.0, 1.0) == 0.0);
    CHECK_THROWS_AS(pds(0.1, 0.0), ConfigError);
    CHECK_THROWS_AS(pds(0.1, -1.0), ConfigError);
    CHECK_THROWS_AS(pds(-0.1, 1.0), ConfigError);
}

TEST_CASE("grid evaluator matches direct pulse sums", "[pulse]") {
    const PulseShape pulse;
    Rng rng(11);
    for (double tm : {0.0, 0.2, 0.8}) {
        const MultipathProfile profile = sample_profile({10, tm, 1.0}, rng);
        const double start = -0.5, step = 1.0 / 128.0;
        std::vector<cdouble> grid(static_cast<std::size_t>((tm + 1.0) / step) + 2);
        detail::desired_tap_grid(profile, pulse, start, step, grid);
        for (std::size_t j = 0; j < grid.size(); ++j) {
            const cdouble direct = desired_tap(profile, pulse, start + step * j);
            CHECK(std::abs(grid[j] - direct) < 1e-12);
        }
    }
    // The singular instant itself must not poison the grid.
    MultipathProfile single{{{1.0, 0.0, 0.0}}, 0.0, 1.0};
    const double ts = 1.0 / 0.44;
    std::vector<cdouble> grid(3);
    detail::desired_tap_grid(single, pulse, ts - 0.25, 0.25, grid);
    CHECK(grid[1].real() == Approx(composite_pulse(pulse, ts)).margin(1e-15));
}
