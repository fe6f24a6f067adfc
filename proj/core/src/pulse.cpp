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
#include <numbers>
#include <string>

#include "mediumband/channel.hpp"
#include "mediumband/detail/pulse_grid.hpp"
#include "mediumband/errors.hpp"

namespace mediumband {

namespace {

constexpr double kPi = std::numbers::pi;
// Distance (in symbol periods) inside which the closed form is replaced by its limit.
constexpr double kGuard = 1e-9;

double sinc(double x) {
    if (std::abs(x) < kGuard) return 1.0 - (kPi * x) * (kPi * x) / 6.0;
    if (x == std::nearbyint(x)) return 0.0; // Nyquist zeros are exact
    return std::sin(kPi * x) / (kPi * x);
}

// Value of the raised cosine at x = +-1/(2 beta), in symbol periods.
double singular_limit(double beta) { return 0.25 * kPi * sinc(0.5 / beta); }

} // namespace

void PulseShape::validate() const {
    if (!(rolloff > 0.0 && rolloff <= 1.0))
        throw ConfigError("pulse roll-off must lie in (0, 1], got " + std::to_string(rolloff));
    if (span < 2) throw ConfigError("pulse span must be at least 2 symbol periods");
    if (oversampling < 1) throw ConfigError("pulse oversampling must be positive");
    if (!(symbol_period > 0.0)) throw ConfigError("symbol period must be positive");
}

double composite_pulse(const PulseShape& pulse, double t) {
    const double x = t / pulse.symbol_period;
    if (std::abs(x) > 0.5 * pulse.span) return 0.0;
    const double beta = pulse.rolloff;
    const double d = 1.0 - (2.0 * beta * x) * (2.0 * beta * x);
    if (std::abs(std::abs(x) - 0.5 / beta) < kGuard) return singular_limit(beta);
    return sinc(x) * std::cos(kPi * beta * x) / d;
}

double pds(double delay_spread, double symbol_period) {
    if (!(symbol_period > 0.0)) throw ConfigError("symbol period must be positive");
    if (!(delay_spread >= 0.0)) throw ConfigError("delay spread must be non-negative");
    return 100.0 * delay_spread / symbol_period;
}

namespace detail {

void desired_tap_grid(const MultipathProfile& profile, const PulseShape& pulse, double start,
                      double step, std::span<cdouble> out) {
    for (auto& v : out) v = {0.0, 0.0};
    const double ts = pulse.symbol_period;
    const double beta = pulse.rolloff;
    const double half = 0.5 * pulse.span;
    const double dx = step / ts;
    const double limit = singular_limit(beta);
    const cdouble rot_a = std::polar(1.0, kPi * dx);
    const cdouble rot_b = std::polar(1.0, kPi * beta * dx);
    const std::size_t count = out.size();

    for (const auto& path : profile.paths) {
        const cdouble gain = path.gain();
        const double x0 = (start - path.delay) / ts;
        // Only grid points inside the pulse support contribute.
        const double j_lo = std::ceil((-half - x0) / dx);
        const double j_hi = std::floor((half - x0) / dx);
        if (j_hi < 0.0 || j_lo >= static_cast<double>(count)) continue;
        const std::size_t first = j_lo < 0.0 ? 0 : static_cast<std::size_t>(j_lo);
        const std::size_t last =
            std::min(count - 1, static_cast<std::size_t>(std::max(0.0, j_hi)));

        cdouble a, b;
        for (std::size_t j = first; j <= last; ++j) {
            const double x = x0 + static_cast<double>(j) * dx;
            if ((j - first) % 64 == 0) {
                a = std::polar(1.0, kPi * x);
                b = std::polar(1.0, kPi * beta * x);
            } else {
                a *= rot_a;
                b *= rot_b;
            }
            double p;
            const double ax = std::abs(x);
            if (ax > half) {
                p = 0.0;
            } else if (ax < kGuard) {
                p = sinc(x);
            } else if (std::abs(ax - 0.5 / beta) < kGuard) {
                p = limit;
            } else {
                const double q = 2.0 * beta * x;
                p = a.imag() * b.real() / (kPi * x * (1.0 - q * q));
            }
            out[j] += gain * p;
        }
    }
}

} // namespace detail

} // namespace mediumband
