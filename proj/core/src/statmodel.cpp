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
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>

#include "mediumband/errors.hpp"
#include "mediumband/statmodel.hpp"

namespace mediumband {

namespace {

const double kSqrt2Pi = std::sqrt(2.0 * std::numbers::pi);

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

} // namespace

double GaussianHoleParams::lambda0() const { return std::sqrt(outer_variance); }

double GaussianHoleParams::lambda1() const {
    if (inner_variance == 0.0) return 0.0;
    return std::sqrt(outer_variance * inner_variance / (outer_variance + inner_variance));
}

void GaussianHoleParams::validate() const {
    if (!(depth >= 0.0 && depth <= 1.0))
        throw ParameterError("K must lie in [0, 1], got " + fmt(depth));
    if (!(outer_variance > 0.0) || !std::isfinite(outer_variance))
        throw ParameterError("sigma_O^2 must be finite and positive, got " + fmt(outer_variance));
    if (!(inner_variance >= 0.0))
        throw ParameterError("sigma_I^2 must be non-negative, got " + fmt(inner_variance));
    if (!(inner_variance < outer_variance))
        throw ParameterError("sigma_I must be smaller than sigma_O");
    if (depth * lambda1() >= lambda0())
        throw ParameterError("degenerate normalisation: K * lambda1 >= lambda0");
}

double pdf(const GaussianHoleParams& params, double x) {
    params.validate();
    const double l0 = params.lambda0();
    const double outer = std::exp(-0.5 * x * x / (l0 * l0));
    if (params.is_gaussian()) return outer / (kSqrt2Pi * l0);
    const double l1 = params.lambda1();
    const double inner = std::exp(-0.5 * x * x / (l1 * l1));
    return (outer - params.depth * inner) / (kSqrt2Pi * (l0 - params.depth * l1));
}

double complex_pdf(const GaussianHoleParams& params, double x, double y) {
    return pdf(params, x) * pdf(params, y);
}

Moments moments(const GaussianHoleParams& params) {
    params.validate();
    const double l0 = params.lambda0();
    const double l1 = params.is_gaussian() ? 0.0 : params.lambda1();
    const double k = params.is_gaussian() ? 0.0 : params.depth;
    const double norm = l0 - k * l1;
    return {(std::pow(l0, 3) - k * std::pow(l1, 3)) / norm,
            3.0 * (std::pow(l0, 5) - k * std::pow(l1, 5)) / norm};
}

GaussianHoleSampler::GaussianHoleSampler(const GaussianHoleParams& params)
    : params_(params), lambda0_(params.lambda0()), excess_rate_(0.0) {
    params_.validate();
    if (!params_.is_gaussian()) {
        const double l1 = params_.lambda1();
        excess_rate_ = 0.5 / (l1 * l1) - 0.5 / (lambda0_ * lambda0_);
    }
}

double GaussianHoleSampler::expected_acceptance() const {
    if (params_.is_gaussian()) return 1.0;
    return (lambda0_ - params_.depth * params_.lambda1()) / lambda0_;
}

double GaussianHoleSampler::operator()(Rng& rng) {
    std::normal_distribution<double> proposal(0.0, lambda0_);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (;;) {
        const double x = proposal(rng);
        ++proposals_;
        if (excess_rate_ == 0.0) {
            ++accepted_;
            return x;
        }
        const double keep = 1.0 - params_.depth * std::exp(-x * x * excess_rate_);
        if (unit(rng) < keep) {
            ++accepted_;
            return x;
        }
    }
}

double sample(const GaussianHoleParams& params, Rng& rng) {
    GaussianHoleSampler sampler(params);
    return sampler(rng);
}

double log_likelihood(const GaussianHoleParams& params, std::span<const double> samples) {
    params.validate();
    const double l0 = params.lambda0();
    const double a0 = 0.5 / (l0 * l0);
    double sum = 0.0;
    if (params.is_gaussian()) {
        for (const double x : samples) sum -= a0 * x * x;
        return sum - static_cast<double>(samples.size()) * std::log(kSqrt2Pi * l0);
    }
    const double l1 = params.lambda1();
    const double a1 = 0.5 / (l1 * l1);
    const double k = params.depth;
    const double excess = a1 - a0;
    for (const double x : samples) {
        const double x2 = x * x;
        sum += std::log1p(-k * std::exp(-excess * x2)) - a0 * x2;
    }
    return sum - static_cast<double>(samples.size()) * std::log(kSqrt2Pi * (l0 - k * l1));
}

std::string to_key_value(const GaussianHoleParams& params) {
    return "K = " + fmt(params.depth) + "\nsigma_I_sq = " + fmt(params.inner_variance) +
           "\nsigma_O_sq = " + fmt(params.outer_variance) + "\n";
}

GaussianHoleParams parse_key_value(std::string_view text) {
    GaussianHoleParams params;
    bool seen[3] = {false, false, false};
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        if (trim(line).empty()) continue;
        if (eq == std::string::npos)
            throw ParameterError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        double v = 0.0;
        try {
            std::size_t used = 0;
            v = std::stod(value, &used);
            if (used != value.size()) throw std::invalid_argument(value);
        } catch (const std::exception&) {
            throw ParameterError("line " + std::to_string(line_no) + ": bad number '" + value + "'");
        }
        if (key == "K") {
            params.depth = v;
            seen[0] = true;
        } else if (key == "sigma_I_sq") {
            params.inner_variance = v;
            seen[1] = true;
        } else if (key == "sigma_O_sq") {
            params.outer_variance = v;
            seen[2] = true;
        } else {
            throw ParameterError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (!(seen[0] && seen[1] && seen[2]))
        throw ParameterError("missing key: K, sigma_I_sq and sigma_O_sq are all required");
    params.validate();
    return params;
}

} // namespace mediumband
