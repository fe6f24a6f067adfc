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

#include "mediumband/detection.hpp"
#include "mediumband/errors.hpp"
#include "mediumband/experiments.hpp"

using namespace mediumband;
using Catch::Approx;

namespace {

SimConfig small_ber_config() {
    SimConfig c;
    c.pds_list = {20.0};
    c.snr_grid_db = {0.0, 10.0, 20.0};
    c.max_bits = 300000;
    c.target_errors = 100;
    c.frames_per_batch = 200;
    c.power_realizations = 2000;
    return c;
}

} // namespace

TEST_CASE("defaults describe the reference link", "[experiments]") {
    const SimConfig c;
    CHECK(c.num_paths == 10);
    CHECK(c.symbol_period == 1.0);
    CHECK(c.rolloff == 0.22);
    CHECK(c.span == 12);
    CHECK(c.frame_len == 100);
    CHECK(c.schemes.size() == 4);
    CHECK(c.snr_grid_db.size() == 10);
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("configuration validation", "[experiments]") {
    SimConfig c;
    c.pds_list = {200.0};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.pds_list = {-1.0};
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.num_paths = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.schemes.clear();
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.frame_len = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    CHECK_THROWS_AS(run_ber_sweep(SimConfig{.pds_list = {150.0}}), ConfigError);
}

TEST_CASE("scheme names", "[experiments]") {
    for (Scheme s : all_schemes()) CHECK(parse_scheme(to_string(s)) == s);
    CHECK(to_string(Scheme::kNarrowband) == "narrowband-rayleigh-sim");
    CHECK_THROWS_AS(parse_scheme("3-tap"), ConfigError);
}

TEST_CASE("BER sweep bookkeeping", "[experiments]") {
    const auto curves = run_ber_sweep(small_ber_config());
    REQUIRE(curves.size() == 4);
    for (const auto& c : curves) {
        REQUIRE(c.points.size() == 3);
        for (const auto& p : c.points) {
            CHECK(p.bits % 100 == 0);
            CHECK(p.ber == Approx(static_cast<double>(p.errors) / p.bits));
            CHECK((p.errors >= 100 || p.undersampled));
            CHECK(p.undersampled == (p.errors < 100));
            CHECK(p.rayleigh_analytic == rayleigh_ber_analytic(p.gamma_bar_db));
            CHECK(p.std_error >= 0.0);
        }
        CHECK(c.signal_power == Approx(1.0).margin(0.02));
    }
}

TEST_CASE("results do not depend on the worker count", "[experiments]") {
    SimConfig c = small_ber_config();
    c.threads = 1;
    const auto a = run_ber_sweep(c);
    c.threads = 4;
    const auto b = run_ber_sweep(c);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].points.size(); ++j) {
            CHECK(a[i].points[j].bits == b[i].points[j].bits);
            CHECK(a[i].points[j].errors == b[i].points[j].errors);
            CHECK(a[i].points[j].std_error == b[i].points[j].std_error);
        }

    SimConfig e;
    e.samples = 3000;
    e.threads = 1;
    const auto s1 = run_pdf_ensemble(e, 40.0);
    e.threads = 3;
    const auto s3 = run_pdf_ensemble(e, 40.0);
    CHECK(s1.re_g == s3.re_g);
    CHECK(s1.im_g == s3.im_g);
    CHECK(s1.mean_sir_db == s3.mean_sir_db);
}

TEST_CASE("small ensembles report a fit failure with partial results", "[experiments]") {
    SimConfig c;
    c.samples = 2000;
    const auto s = run_pdf_ensemble(c, 20.0);
    REQUIRE(s.fit_error.has_value());
    CHECK(s.fit_error->find("insufficient samples") != std::string::npos);
    CHECK(s.re_g.size() == 2000);
}

TEST_CASE("near-zero delay spread is nearly ISI free", "[experiments]") {
    SimConfig c;
    c.pds_list = {1.0};
    c.sir_realizations = 5000;
    const auto rows = run_sir_sweep(c);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mean_sir_db > 30.0);
    CHECK(rows[0].realizations == 5000);
}

TEST_CASE("scatter pairs share profiles", "[experiments]") {
    SimConfig c;
    c.samples = 2000;
    const auto s = run_scatter(c, 0.0);
    REQUIRE(s.h.size() == 2000);
    // With no delay spread the synchronized g is h itself.
    for (std::size_t i = 0; i < s.h.size(); ++i) CHECK(std::abs(s.h[i] - s.g[i]) < 1e-12);
}
