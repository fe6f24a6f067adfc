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

#include <cmath>
#include <stdexcept>

#include "mediumband/detection.hpp"
#include "mediumband/errors.hpp"

namespace mediumband {

Frame Frame::from_bits(std::vector<std::uint8_t> bits) {
    Frame f;
    f.symbols.reserve(bits.size());
    for (auto& b : bits) {
        b = b ? 1 : 0;
        f.symbols.push_back(1.0 - 2.0 * b);
    }
    f.bits = std::move(bits);
    return f;
}

Frame Frame::random(std::size_t length, Rng& rng) {
    std::vector<std::uint8_t> bits(length);
    std::uint64_t word = 0;
    for (std::size_t i = 0; i < length; ++i) {
        if (i % 64 == 0) word = rng();
        bits[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1u);
    }
    return from_bits(std::move(bits));
}

double SnrPoint::noise_variance() const {
    return signal_power / std::pow(10.0, gamma_bar_db / 10.0);
}

std::vector<cdouble> convolve(std::span<const double> symbols, const DiscreteChannel& channel) {
    const auto n = static_cast<long>(symbols.size());
    const auto taps = channel.taps();
    const long first = channel.min_index();
    std::vector<cdouble> out(symbols.size());
    for (long k = 0; k < n; ++k) {
        cdouble acc{0.0, 0.0};
        for (std::size_t t = 0; t < taps.size(); ++t) {
            const long src = k - (first + static_cast<long>(t));
            if (src >= 0 && src < n) acc += taps[t] * symbols[static_cast<std::size_t>(src)];
        }
        out[static_cast<std::size_t>(k)] = acc;
    }
    return out;
}

void add_noise(std::span<cdouble> samples, double variance, Rng& rng) {
    if (variance <= 0.0) return;
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5 * variance));
    for (auto& s : samples) {
        const double re = normal(rng);
        const double im = normal(rng);
        s += cdouble{re, im};
    }
}

std::vector<cdouble> transmit(const Frame& frame, const DiscreteChannel& channel,
                              const SnrPoint& snr, Rng& rng) {
    auto r = convolve(frame.symbols, channel);
    add_noise(r, snr.noise_variance(), rng);
    return r;
}

std::vector<cdouble> lower_bound_transmit(const Frame& frame, cdouble g, const SnrPoint& snr,
                                          Rng& rng) {
    std::vector<cdouble> r(frame.size());
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = g * frame.symbols[k];
    add_noise(r, snr.noise_variance(), rng);
    return r;
}

std::vector<std::uint8_t> detect_1tap(std::span<const cdouble> received, cdouble g) {
    if (g == cdouble{0.0, 0.0}) throw DegenerateChannelError("desired fading factor is zero");
    const cdouble w = std::conj(g);
    std::vector<std::uint8_t> bits(received.size());
    for (std::size_t k = 0; k < received.size(); ++k)
        bits[k] = (w * received[k]).real() >= 0.0 ? 0 : 1;
    return bits;
}

SicDecision detect_2tap_sic(std::span<const cdouble> received, cdouble desired,
                            cdouble interferer, int offset) {
    if (desired == cdouble{0.0, 0.0})
        throw DegenerateChannelError("desired fading factor is zero");
    if (offset == 0 && interferer != cdouble{0.0, 0.0})
        throw std::invalid_argument("interferer offset must be nonzero");

    const auto n = static_cast<long>(received.size());
    const cdouble w = std::conj(desired);
    SicDecision out;
    out.bits.assign(received.size(), 0);
    out.ordering_violated = std::abs(interferer) > std::abs(desired);
    std::vector<double> decided(received.size(), 0.0);

    const auto decide = [&](long k) {
        cdouble r = received[static_cast<std::size_t>(k)];
        const long src = k - offset;
        if (src >= 0 && src < n) r -= interferer * decided[static_cast<std::size_t>(src)];
        const bool zero = (w * r).real() >= 0.0;
        out.bits[static_cast<std::size_t>(k)] = zero ? 0 : 1;
        decided[static_cast<std::size_t>(k)] = zero ? 1.0 : -1.0;
    };
    if (offset >= 0) {
        for (long k = 0; k < n; ++k) decide(k);
    } else {
        for (long k = n - 1; k >= 0; --k) decide(k);
    }
    return out;
}

double rayleigh_ber_analytic(double gamma_bar_db) {
    const double g = std::pow(10.0, gamma_bar_db / 10.0);
    return 0.5 * (1.0 - std::sqrt(g / (1.0 + g)));
}

std::size_t count_bit_errors(std::span<const std::uint8_t> sent,
                             std::span<const std::uint8_t> detected) {
    if (sent.size() != detected.size())
        throw std::invalid_argument("bit sequences differ in length");
    std::size_t errors = 0;
    for (std::size_t i = 0; i < sent.size(); ++i) errors += (sent[i] != 0) != (detected[i] != 0);
    return errors;
}

} // namespace mediumband
