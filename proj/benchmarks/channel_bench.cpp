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

#include <benchmark/benchmark.h>

#include <vector>

#include "mediumband/channel.hpp"
#include "mediumband/random.hpp"

using namespace mediumband;

namespace {

std::vector<MultipathProfile> profiles(double pds, std::size_t count) {
    Rng rng = make_stream(1, {label_tag("bench"), value_tag(pds)});
    const ProfileSpec spec = ProfileSpec::from_pds(pds);
    std::vector<MultipathProfile> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(sample_profile(spec, rng));
    return out;
}

void BM_CompositePulse(benchmark::State& state) {
    const PulseShape pulse;
    double t = -6.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(composite_pulse(pulse, t));
        t += 1e-3;
        if (t > 6.0) t = -6.0;
    }
}
BENCHMARK(BM_CompositePulse);

void BM_Synchronize(benchmark::State& state) {
    const double pds = static_cast<double>(state.range(0));
    const auto objective = static_cast<SyncObjective>(state.range(1));
    const auto set = profiles(pds, 256);
    const PulseShape pulse;
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(synchronize(set[i++ % set.size()], pulse, objective));
    }
    state.SetLabel(std::string(to_string(objective)));
}
BENCHMARK(BM_Synchronize)
    ->ArgsProduct({{5, 20, 60, 80},
                   {static_cast<int>(SyncObjective::kPerRail),
                    static_cast<int>(SyncObjective::kDesiredPower),
                    static_cast<int>(SyncObjective::kSir)}})
    ->Unit(benchmark::kMicrosecond);

void BM_EffectiveTaps(benchmark::State& state) {
    const auto set = profiles(60.0, 256);
    const PulseShape pulse;
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(effective_taps(set[i++ % set.size()], pulse, 0.3));
    }
}
BENCHMARK(BM_EffectiveTaps)->Unit(benchmark::kMicrosecond);

} // namespace
