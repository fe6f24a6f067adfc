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

#include "mediumband/channel.hpp"

using namespace mediumband;
using Catch::Approx;

namespace {

double sir_at(const MultipathProfile& profile, const PulseShape& pulse, double t) {
    const auto ch = effective_taps(profile, pulse, t);
    return std::norm(ch.desired()) / ch.interference_energy();
}

} // namespace

TEST_CASE("a lone path is sampled at its delay", "[sync]") {
    const PulseShape pulse;
    for (double phase : {0.0, 0.9, 2.0}) {
        const MultipathProfile profile{{{1.0, phase, 0.3}}, 0.3, 1.0};
        for (auto o : {SyncObjective::kPerRail, SyncObjective::kDesiredPower}) {
            const auto t = synchronize(profile, pulse, o);
            CHECK(t.in_phase == Approx(0.3).margin(2e-6));
            CHECK(t.quadrature == Approx(0.3).margin(2e-6));
            const auto ch = effective_taps(profile, pulse, t);
            CHECK(ch.timing_offset() == Approx(0.3).margin(2e-6));
        }
    }
}

TEST_CASE("zero delay spread samples at zero", "[sync]") {
    Rng rng(4);
    const auto profile = sample_profile({10, 0.0, 1.0}, rng);
    for (auto o : {SyncObjective::kPerRail, SyncObjective::kDesiredPower, SyncObjective::kSir}) {
        const auto t = synchronize(profile, PulseShape{}, o);
        CHECK(t.in_phase == 0.0);
        CHECK(t.quadrature == 0.0);
    }
}

TEST_CASE("synchronized instant beats a ten-times finer grid", "[sync]") {
    const PulseShape pulse;
    Rng rng(7);
    const auto profile = sample_profile({10, 0.6, 1.0}, rng);
    const double lo = -0.5, hi = profile.delay_spread + 0.5;
    const double step = 1.0 / 1280.0;

    const auto tp = synchronize(profile, pulse, SyncObjective::kDesiredPower);
    const double best_power = std::norm(desired_tap(profile, pulse, tp.in_phase));
    const auto tr = synchronize(profile, pulse, SyncObjective::kPerRail);
    const double best_re = std::abs(desired_tap(profile, pulse, tr.in_phase).real());
    const double best_im = std::abs(desired_tap(profile, pulse, tr.quadrature).imag());
    const auto ts = synchronize(profile, pulse, SyncObjective::kSir);
    const double best_sir = sir_at(profile, pulse, ts.in_phase);
    CHECK(ts.in_phase == ts.quadrature);

    for (double t = lo; t <= hi; t += step) {
        const cdouble c = desired_tap(profile, pulse, t);
        CHECK(best_power >= std::norm(c) * (1.0 - 1e-12));
        CHECK(best_re >= std::abs(c.real()) * (1.0 - 1e-12));
        CHECK(best_im >= std::abs(c.imag()) * (1.0 - 1e-12));
        CHECK(best_sir >= sir_at(profile, pulse, t) * (1.0 - 1e-9));
    }
}

TEST_CASE("synchronization never loses to sampling at zero", "[sync]") {
    const PulseShape pulse;
    Rng rng(13);
    for (int i = 0; i < 2000; ++i) {
        const auto profile = sample_profile({10, 0.2 + 0.6 * (i % 4) / 3.0, 1.0}, rng);
        const double at_zero = std::norm(desired_tap(profile, pulse, 0.0));
        for (auto o : {SyncObjective::kPerRail, SyncObjective::kDesiredPower})
            REQUIRE(std::norm(synchronized_channel(profile, pulse, o).desired()) >=
                    at_zero * (1.0 - 1e-12));
    }
}

TEST_CASE("reported timing offset lies within one symbol period", "[sync]") {
    const PulseShape pulse;
    Rng rng(17);
    for (int i = 0; i < 500; ++i) {
        const auto ch = synchronized_channel(sample_profile({10, 0.8, 1.0}, rng), pulse);
        REQUIRE(ch.timing_offset() >= 0.0);
        REQUIRE(ch.timing_offset() < 1.0);
        REQUIRE(ch.quadrature_timing_offset() >= 0.0);
        REQUIRE(ch.quadrature_timing_offset() < 1.0);
    }
}
