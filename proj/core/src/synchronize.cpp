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
#include <functional>
#include <vector>

#include "mediumband/channel.hpp"
#include "mediumband/detail/pulse_grid.hpp"

namespace mediumband {

namespace {

constexpr int kGridPerSymbol = 128;
constexpr double kRefineTolerance = 1e-6; // in symbol periods

struct Peak {
    double instant;
    double value;
};

// Golden-section maximisation of f on [t - step, t + step]; keeps the grid
// point if refinement does not beat it (exact symmetric peaks stay exact).
Peak refine(const std::function<double(double)>& f, Peak grid_peak, double step, double tol) {
    const double inv_phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = grid_peak.instant - step;
    double b = grid_peak.instant + step;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const Peak refined = fc > fd ? Peak{c, fc} : Peak{d, fd};
    return refined.value > grid_peak.value ? refined : grid_peak;
}

template <typename Score>
Peak grid_argmax(const std::vector<cdouble>& grid, double start, double step, Score score) {
    Peak best{start, -1.0};
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double v = score(grid[j]);
        if (v > best.value) best = {start + static_cast<double>(j) * step, v};
    }
    return best;
}

double interference_ratio(const MultipathProfile& profile, const PulseShape& pulse, double t) {
    const DiscreteChannel ch = effective_taps(profile, pulse, t);
    return std::norm(ch.desired()) / std::max(ch.interference_energy(), 1e-300);
}

} // namespace

SamplingInstants synchronize(const MultipathProfile& profile, const PulseShape& pulse,
                             SyncObjective objective) {
    pulse.validate();
    const double ts = profile.symbol_period;
    const double step = ts / kGridPerSymbol;
    const double tol = ts * kRefineTolerance;
    double max_delay = profile.delay_spread;
    for (const auto& p : profile.paths) max_delay = std::max(max_delay, p.delay);

    // Window [-T_s/2, T_m + T_s/2] on a grid that contains t = 0 exactly.
    const int before = kGridPerSymbol / 2;
    const int after = static_cast<int>(std::ceil((max_delay + 0.5 * ts) / step));
    const double start = -before * step;
    const std::size_t count = static_cast<std::size_t>(before + after + 1);

    if (objective == SyncObjective::kSir) {
        // c_k(t) = c_0(t + k T_s): one extended grid serves every tap.
        const int reach = static_cast<int>(std::ceil((pulse.half_support() + max_delay) / ts)) + 1;
        const std::size_t pad = static_cast<std::size_t>(reach) * kGridPerSymbol;
        std::vector<cdouble> ext(count + 2 * pad);
        detail::desired_tap_grid(profile, pulse, start - static_cast<double>(pad) * step, step,
                                 ext);
        Peak best{start, -1.0};
        for (std::size_t j = 0; j < count; ++j) {
            const std::size_t centre = j + pad;
            double isi = 0.0;
            for (int k = -reach; k <= reach; ++k) {
                if (k == 0) continue;
                const auto idx = static_cast<std::ptrdiff_t>(centre) + k * kGridPerSymbol;
                isi += std::norm(ext[static_cast<std::size_t>(idx)]);
            }
            const double v = std::norm(ext[centre]) / std::max(isi, 1e-300);
            if (v > best.value) best = {start + static_cast<double>(j) * step, v};
        }
        const Peak peak = refine(
            [&](double t) { return interference_ratio(profile, pulse, t); }, best, step, tol);
        return {peak.instant, peak.instant};
    }

    std::vector<cdouble> grid(count);
    detail::desired_tap_grid(profile, pulse, start, step, grid);

    if (objective == SyncObjective::kDesiredPower) {
        const Peak best = grid_argmax(grid, start, step, [](cdouble c) { return std::norm(c); });
        const Peak peak = refine(
            [&](double t) { return std::norm(desired_tap(profile, pulse, t)); }, best, step, tol);
        return {peak.instant, peak.instant};
    }

    const Peak grid_i =
        grid_argmax(grid, start, step, [](cdouble c) { return std::abs(c.real()); });
    const Peak grid_q =
        grid_argmax(grid, start, step, [](cdouble c) { return std::abs(c.imag()); });
    const double scale = std::max(grid_i.value, grid_q.value);
    if (scale <= 0.0) return {0.0, 0.0};

    const auto rail_peak = [&](Peak g, bool in_phase) {
        return refine(
            [&](double t) {
                const cdouble c = desired_tap(profile, pulse, t);
                return std::abs(in_phase ? c.real() : c.imag());
            },
            g, step, tol);
    };
    // A rail carrying (numerically) nothing follows the other rail.
    const double floor = 1e-12 * scale;
    if (grid_q.value <= floor) {
        const double t = rail_peak(grid_i, true).instant;
        return {t, t};
    }
    if (grid_i.value <= floor) {
        const double t = rail_peak(grid_q, false).instant;
        return {t, t};
    }
    return {rail_peak(grid_i, true).instant, rail_peak(grid_q, false).instant};
}

} // namespace mediumband
