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

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "mediumband/random.hpp"

namespace mediumband {

using cdouble = std::complex<double>;

/// One multipath component: linear gain, phase in [0, 2*pi), excess delay in seconds.
struct PathComponent {
    double amplitude = 0.0;
    double phase = 0.0;
    double delay = 0.0;

    /// Complex path gain alpha * exp(-j phi).
    cdouble gain() const { return std::polar(amplitude, -phase); }
};

/// One realization of the propagation environment.
struct MultipathProfile {
    std::vector<PathComponent> paths;
    double delay_spread = 0.0;  // T_m
    double symbol_period = 1.0; // T_s

    /// Instantaneous sum of path powers.
    double total_power() const;
};

/// What sample_profile draws: N equal-average-power Rayleigh paths with
/// delays uniform on [0, T_m] and phases uniform on [0, 2*pi).
struct ProfileSpec {
    std::size_t num_paths = 10;
    double delay_spread = 0.0;
    double symbol_period = 1.0;

    void validate() const;
    static ProfileSpec from_pds(double pds_percent, std::size_t num_paths = 10,
                                double symbol_period = 1.0);
};

/// Raised-cosine composite of the TX and RX square-root raised-cosine filters.
struct PulseShape {
    double rolloff = 0.22;
    int span = 12;         // total truncation length in symbol periods
    int oversampling = 8;  // samples per symbol, waveform export only
    double symbol_period = 1.0;

    void validate() const;
    double half_support() const { return 0.5 * span * symbol_period; }
};

/// Raised-cosine pulse p(t), zero outside |t| <= span/2 * T_s. The removable
/// singularities at t = 0 and t = +-T_s/(2 beta) return their analytic limits.
double composite_pulse(const PulseShape& pulse, double t);

MultipathProfile sample_profile(const ProfileSpec& spec, Rng& rng);

/// Sum of complex path gains, the narrowband fading factor h.
cdouble narrowband_factor(const MultipathProfile& profile);

/// Percentage delay spread, 100 * T_m / T_s.
double pds(double delay_spread, double symbol_period);

/// How the receiver picks its sampling instant(s).
///
/// kPerRail samples the in-phase and quadrature rails independently, each at
/// the instant that maximises that rail's desired-tap magnitude. For a
/// one-dimensional constellation this is free to do and it is the rule that
/// produces the bimodal desired-factor statistics on both rails.
/// kDesiredPower uses one instant maximising |c_0|^2; kSir one instant
/// maximising |c_0|^2 / sum_{k != 0} |c_k|^2.
enum class SyncObjective { kPerRail, kDesiredPower, kSir };

std::string_view to_string(SyncObjective objective);
/// Accepts "per-rail", "desired-power", "sir". Throws ConfigError otherwise.
SyncObjective parse_sync_objective(std::string_view name);

/// Absolute sampling instants (seconds, relative to zero excess delay) of the
/// in-phase and quadrature rails. Equal for single-instant objectives.
struct SamplingInstants {
    double in_phase = 0.0;
    double quadrature = 0.0;
};

/// Symbol-spaced composite channel seen by the detector:
/// r_k = sum_m c_m s_{k-m} + w_k, with the desired factor g = c_0.
class DiscreteChannel {
public:
    struct Interferer {
        int offset = 0;
        cdouble tap{};
    };

    DiscreteChannel() = default;
    DiscreteChannel(int first_index, std::vector<cdouble> taps, SamplingInstants instants,
                    double symbol_period = 1.0);

    static DiscreteChannel single_tap(cdouble g);

    int min_index() const { return first_; }
    int max_index() const { return first_ + static_cast<int>(taps_.size()) - 1; }
    std::span<const cdouble> taps() const { return taps_; }
    cdouble tap(int k) const;
    cdouble desired() const { return tap(0); }

    SamplingInstants instants() const { return instants_; }
    /// In-phase sampling instant reduced to [0, T_s).
    double timing_offset() const;
    double quadrature_timing_offset() const;

    double energy() const;
    double interference_energy() const;
    /// 10 log10(|c_0|^2 / sum_{k != 0} |c_k|^2); +inf without interference.
    double sir_db() const;

    /// Largest-magnitude tap other than c_0 (offset 0 and tap 0 if none).
    Interferer strongest_interferer() const;

private:
    int first_ = 0;
    std::vector<cdouble> taps_{cdouble{0.0, 0.0}};
    SamplingInstants instants_{};
    double symbol_period_ = 1.0;
};

/// Desired tap c_0 for a single sampling instant t: sum_n gamma_n p(t - tau_n).
cdouble desired_tap(const MultipathProfile& profile, const PulseShape& pulse, double instant);

/// c_k = sum_n gamma_n p(k T_s + t - tau_n) for every k with nonzero support.
DiscreteChannel effective_taps(const MultipathProfile& profile, const PulseShape& pulse,
                               double instant);

/// Rail-wise taps: Re{c_k(t_I)} + j Im{c_k(t_Q)}.
DiscreteChannel effective_taps(const MultipathProfile& profile, const PulseShape& pulse,
                               SamplingInstants instants);

/// Grid search at T_s/128 over [-T_s/2, T_m + T_s/2] followed by golden-section
/// refinement to T_s * 1e-6.
SamplingInstants synchronize(const MultipathProfile& profile, const PulseShape& pulse,
                             SyncObjective objective = SyncObjective::kPerRail);

inline DiscreteChannel synchronized_channel(const MultipathProfile& profile,
                                            const PulseShape& pulse,
                                            SyncObjective objective = SyncObjective::kPerRail) {
    return effective_taps(profile, pulse, synchronize(profile, pulse, objective));
}

} // namespace mediumband
