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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "mediumband/channel.hpp"
#include "mediumband/errors.hpp"

namespace mediumband {

double MultipathProfile::total_power() const {
    double p = 0.0;
    for (const auto& path : paths) p += path.amplitude * path.amplitude;
    return p;
}

void ProfileSpec::validate() const {
    if (num_paths == 0) throw ConfigError("number of multipath components must be at least 1");
    if (!(delay_spread >= 0.0) || !std::isfinite(delay_spread))
        throw ConfigError("delay spread must be finite and non-negative");
    if (!(symbol_period > 0.0) || !std::isfinite(symbol_period))
        throw ConfigError("symbol period must be finite and positive");
}

ProfileSpec ProfileSpec::from_pds(double pds_percent, std::size_t num_paths, double symbol_period) {
    if (!(pds_percent >= 0.0)) throw ConfigError("PDS must be non-negative");
    ProfileSpec spec{num_paths, pds_percent / 100.0 * symbol_period, symbol_period};
    spec.validate();
    return spec;
}

MultipathProfile sample_profile(const ProfileSpec& spec, Rng& rng) {
    spec.validate();
    std::uniform_real_distribution<double> delay(0.0, spec.delay_spread);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    // alpha^2 ~ Exp(mean 1/N) makes alpha Rayleigh with E[alpha^2] = 1/N.
    std::exponential_distribution<double> power(static_cast<double>(spec.num_paths));

    MultipathProfile profile;
    profile.delay_spread = spec.delay_spread;
    profile.symbol_period = spec.symbol_period;
    profile.paths.resize(spec.num_paths);
    for (auto& path : profile.paths) {
        path.delay = spec.delay_spread > 0.0 ? delay(rng) : 0.0;
        path.phase = phase(rng);
        path.amplitude = std::sqrt(power(rng));
    }
    return profile;
}

cdouble narrowband_factor(const MultipathProfile& profile) {
    cdouble h{0.0, 0.0};
    for (const auto& path : profile.paths) h += path.gain();
    return h;
}

std::string_view to_string(SyncObjective objective) {
    switch (objective) {
    case SyncObjective::kPerRail: return "per-rail";
    case SyncObjective::kDesiredPower: return "desired-power";
    case SyncObjective::kSir: return "sir";
    }
    return "unknown";
}

SyncObjective parse_sync_objective(std::string_view name) {
    if (name == "per-rail") return SyncObjective::kPerRail;
    if (name == "desired-power") return SyncObjective::kDesiredPower;
    if (name == "sir") return SyncObjective::kSir;
    throw ConfigError("unknown synchronization objective '" + std::string(name) +
                      "' (expected per-rail, desired-power or sir)");
}

// ---- DiscreteChannel --------------------------------------------------------

DiscreteChannel::DiscreteChannel(int first_index, std::vector<cdouble> taps,
                                 SamplingInstants instants, double symbol_period)
    : first_(first_index), taps_(std::move(taps)), instants_(instants),
      symbol_period_(symbol_period) {
    if (taps_.empty()) {
        first_ = 0;
        taps_.assign(1, cdouble{0.0, 0.0});
    }
    // Keep index 0 addressable so desired() is always a stored tap.
    if (first_ > 0) {
        taps_.insert(taps_.begin(), static_cast<std::size_t>(first_), cdouble{0.0, 0.0});
        first_ = 0;
    }
    if (max_index() < 0) taps_.resize(taps_.size() + static_cast<std::size_t>(-max_index()));
}

DiscreteChannel DiscreteChannel::single_tap(cdouble g) {
    return DiscreteChannel(0, {g}, SamplingInstants{});
}

cdouble DiscreteChannel::tap(int k) const {
    if (k < min_index() || k > max_index()) return {0.0, 0.0};
    return taps_[static_cast<std::size_t>(k - first_)];
}

namespace {

double reduce_offset(double instant, double period) {
    double r = std::fmod(instant, period);
    if (r < 0.0) r += period;
    return r >= period ? 0.0 : r;
}

} // namespace

double DiscreteChannel::timing_offset() const {
    return reduce_offset(instants_.in_phase, symbol_period_);
}

double DiscreteChannel::quadrature_timing_offset() const {
    return reduce_offset(instants_.quadrature, symbol_period_);
}

double DiscreteChannel::energy() const {
    double e = 0.0;
    for (const auto& c : taps_) e += std::norm(c);
    return e;
}

double DiscreteChannel::interference_energy() const {
    double e = 0.0;
    for (int k = min_index(); k <= max_index(); ++k)
        if (k != 0) e += std::norm(tap(k));
    return e;
}

double DiscreteChannel::sir_db() const {
    const double isi = interference_energy();
    if (isi == 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(std::norm(desired()) / isi);
}

DiscreteChannel::Interferer DiscreteChannel::strongest_interferer() const {
    Interferer best;
    double best_mag = 0.0;
    for (int k = min_index(); k <= max_index(); ++k) {
        if (k == 0) continue;
        const double m = std::norm(tap(k));
        if (m > best_mag) {
            best_mag = m;
            best = {k, tap(k)};
        }
    }
    return best;
}

// ---- tap extraction ---------------------------------------------------------

cdouble desired_tap(const MultipathProfile& profile, const PulseShape& pulse, double instant) {
    cdouble c{0.0, 0.0};
    for (const auto& path : profile.paths)
        c += path.gain() * composite_pulse(pulse, instant - path.delay);
    return c;
}

namespace {

// Index range of taps with any pulse support for a given instant.
std::pair<int, int> tap_range(const MultipathProfile& profile, const PulseShape& pulse,
                              double instant) {
    double lo = 0.0, hi = profile.delay_spread;
    for (const auto& path : profile.paths) {
        lo = std::min(lo, path.delay);
        hi = std::max(hi, path.delay);
    }
    const double ts = profile.symbol_period;
    const double half = pulse.half_support();
    return {static_cast<int>(std::ceil((lo - half - instant) / ts)),
            static_cast<int>(std::floor((hi + half - instant) / ts))};
}

void check_periods(const MultipathProfile& profile, const PulseShape& pulse) {
    pulse.validate();
    if (std::abs(profile.symbol_period - pulse.symbol_period) > 1e-12 * pulse.symbol_period)
        throw ConfigError("profile and pulse disagree on the symbol period");
}

} // namespace

DiscreteChannel effective_taps(const MultipathProfile& profile, const PulseShape& pulse,
                               double instant) {
    return effective_taps(profile, pulse, SamplingInstants{instant, instant});
}

DiscreteChannel effective_taps(const MultipathProfile& profile, const PulseShape& pulse,
                               SamplingInstants instants) {
    check_periods(profile, pulse);
    const auto [lo_i, hi_i] = tap_range(profile, pulse, instants.in_phase);
    const auto [lo_q, hi_q] = tap_range(profile, pulse, instants.quadrature);
    const int lo = std::min({lo_i, lo_q, 0});
    const int hi = std::max({hi_i, hi_q, 0});
    const double ts = profile.symbol_period;
    const bool shared = instants.in_phase == instants.quadrature;

    std::vector<cdouble> taps(static_cast<std::size_t>(hi - lo + 1));
    for (int k = lo; k <= hi; ++k) {
        const cdouble ci = desired_tap(profile, pulse, k * ts + instants.in_phase);
        const cdouble cq =
            shared ? ci : desired_tap(profile, pulse, k * ts + instants.quadrature);
        taps[static_cast<std::size_t>(k - lo)] = {ci.real(), cq.imag()};
    }
    return DiscreteChannel(lo, std::move(taps), instants, ts);
}

} // namespace mediumband
