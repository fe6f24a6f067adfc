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
#include <stdexcept>
#include <vector>

#include "mediumband/statmodel.hpp"

namespace mediumband {

DipStatistic dip_statistic(std::span<const double> samples) {
    const std::size_t n = samples.size();
    if (n < 2) throw std::invalid_argument("dip_statistic needs at least two samples");
    double mean = 0.0, sq = 0.0;
    for (const double x : samples) {
        mean += x;
        sq += x * x;
    }
    mean /= static_cast<double>(n);
    const double sigma = std::sqrt(std::max(sq / static_cast<double>(n) - mean * mean, 0.0));
    if (sigma == 0.0) return {};

    const double h = sigma * std::max(0.005, 7000.0 / static_cast<double>(n));
    // Fine histogram (8 bins per bandwidth, one bin centred on 0), then a
    // Gaussian kernel truncated at 4 bandwidths.
    const double width = h / 8.0;
    const double reach = 6.0 * sigma;
    const auto half_bins = static_cast<long>(std::ceil(reach / width));
    const long bins = 2 * half_bins + 1;
    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    for (const double x : samples) {
        const long b = std::lround(x / width) + half_bins;
        if (b >= 0 && b < bins) counts[static_cast<std::size_t>(b)] += 1.0;
    }

    const long taps = 32; // 4h / (h/8)
    std::vector<double> kernel(static_cast<std::size_t>(2 * taps + 1));
    for (long t = -taps; t <= taps; ++t) {
        const double u = static_cast<double>(t) / 8.0;
        kernel[static_cast<std::size_t>(t + taps)] = std::exp(-0.5 * u * u);
    }
    const double norm = 1.0 / (static_cast<double>(n) * h * std::sqrt(2.0 * std::numbers::pi));

    const auto density_at = [&](long b) {
        double acc = 0.0;
        for (long t = -taps; t <= taps; ++t) {
            const long j = b + t;
            if (j >= 0 && j < bins)
                acc += counts[static_cast<std::size_t>(j)] * kernel[static_cast<std::size_t>(t + taps)];
        }
        return acc * norm;
    };

    const double at_zero = density_at(half_bins);
    double best = -1.0;
    long best_bin = half_bins;
    for (long b = 0; b < bins; ++b) {
        const double f = density_at(b);
        if (f > best) {
            best = f;
            best_bin = b;
        }
    }
    DipStatistic out;
    out.bandwidth = h;
    out.mode = static_cast<double>(best_bin - half_bins) * width;
    out.depth = best > 0.0 ? 1.0 - at_zero / best : 0.0;
    out.bimodal = out.depth > 0.05 && std::abs(out.mode) > 2.0 * h;
    return out;
}

} // namespace mediumband
