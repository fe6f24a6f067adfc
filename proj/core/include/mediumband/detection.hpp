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
#include <cstdint>
#include <span>
#include <vector>

#include "mediumband/channel.hpp"
#include "mediumband/random.hpp"

namespace mediumband {

/// BPSK frame: bit b maps to symbol 1 - 2b.
struct Frame {
    std::vector<std::uint8_t> bits;
    std::vector<double> symbols;

    static Frame from_bits(std::vector<std::uint8_t> bits);
    static Frame random(std::size_t length, Rng& rng);
    std::size_t size() const { return bits.size(); }
};

/// Average received SNR gamma_bar: power of the noiseless received signal
/// (ensemble mean of sum_k |c_k|^2) over the complex noise power.
struct SnrPoint {
    double gamma_bar_db = 0.0;
    double signal_power = 1.0;

    double noise_variance() const;
};

/// Noiseless ISI output y_k = sum_m c_m s_{k-m}, symbols outside the frame are 0.
std::vector<cdouble> convolve(std::span<const double> symbols, const DiscreteChannel& channel);

/// Adds circular complex white Gaussian noise of total variance `variance` per sample.
void add_noise(std::span<cdouble> samples, double variance, Rng& rng);

/// r_k = sum_m c_m s_{k-m} + w_k.
std::vector<cdouble> transmit(const Frame& frame, const DiscreteChannel& channel,
                              const SnrPoint& snr, Rng& rng);

/// Genie ISI-free channel r_k = g s_k + w_k with the same SNR convention.
std::vector<cdouble> lower_bound_transmit(const Frame& frame, cdouble g, const SnrPoint& snr,
                                          Rng& rng);

/// Coherent symbol-by-symbol decision: bit 0 iff Re{conj(g) r_k} >= 0.
/// Throws DegenerateChannelError when g == 0.
std::vector<std::uint8_t> detect_1tap(std::span<const cdouble> received, cdouble g);

struct SicDecision {
    std::vector<std::uint8_t> bits;
    bool ordering_violated = false; // |c_j| > |c_0|
};

/// Two-tap successive interference cancellation with hard decisions.
/// The interferer c_j sits at symbol offset j (j > 0 postcursor, j < 0
/// precursor). Symbols are decided in the order that makes s_{k-j} known
/// before s_k: r'_k = r_k - c_j s_hat_{k-j}, then the 1-tap rule on r'_k.
SicDecision detect_2tap_sic(std::span<const cdouble> received, cdouble desired,
                            cdouble interferer, int offset);

/// Average BER of coherent BPSK over ISI-free Rayleigh fading with E|h|^2 = 1.
double rayleigh_ber_analytic(double gamma_bar_db);

std::size_t count_bit_errors(std::span<const std::uint8_t> sent,
                             std::span<const std::uint8_t> detected);

} // namespace mediumband
