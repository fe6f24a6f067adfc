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

#include <algorithm>
#include <cmath>
#include <numbers>

#include "mediumband/errors.hpp"
#include "mediumband/statmodel.hpp"
#include "mediumband_test/oracles.hpp"

using namespace mediumband;
using mediumband::test::kReferenceFits;
using Catch::Approx;

namespace {

std::vector<GaussianHoleParams> random_params(std::size_t count, std::uint64_t seed) {
    Rng rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<GaussianHoleParams> out;
    while (out.size() < count) {
        const double so2 = 0.05 + 2.0 * unit(rng);
        const double ratio = std::pow(10.0, -4.0 + 3.9 * unit(rng)); // sigma_I^2 / sigma_O^2
        out.push_back({unit(rng), ratio * so2, so2});
    }
    return out;
}

double gaussian(double var, double x) {
    return std::exp(-0.5 * x * x / var) / std::sqrt(2.0 * std::numbers::pi * var);
}

} // namespace

TEST_CASE("Gaussian special case", "[statmodel]") {
    const auto g = GaussianHoleParams::gaussian(0.5);
    CHECK(pdf(g, 0.0) == Approx(1.0 / std::sqrt(std::numbers::pi)).epsilon(1e-14));
    CHECK(g.is_gaussian());
    CHECK(g.lambda1() == 0.0);
    double sup = 0.0;
    for (int i = -5000; i <= 5000; ++i) {
        const double x = i * 1e-3;
        sup = std::max(sup, std::abs(pdf(g, x) - gaussian(0.5, x)));
    }
    CHECK(sup < 1e-12);
    // sigma_I -> 0 approaches the Gaussian pointwise even with a full hole.
    for (double x : {0.05, 0.3, 1.0}) {
        double prev = 1.0;
        for (double si2 : {1e-4, 1e-6, 1e-8, 1e-10}) {
            const double err = std::abs(pdf({1.0, si2, 0.5}, x) - gaussian(0.5, x));
            CHECK(err <= prev);
            prev = err;
        }
        CHECK(prev < 1e-4);
    }
}

TEST_CASE("density is even, non-negative and normalized", "[statmodel]") {
    auto params = random_params(100, 31);
    for (const auto& row : kReferenceFits) params.push_back(row.params);
    for (const auto& p : params) {
        const double l0 = p.lambda0();
        const double total = test::integrate([&](double x) { return pdf(p, x); }, -8.0 * l0, 8.0 * l0,
                                             test::hole_breaks(p));
        CHECK(total == Approx(1.0).margin(1e-6));
        for (int i = 0; i < 10000; ++i) {
            const double x = -8.0 * l0 + 16.0 * l0 * i / 9999.0;
            REQUIRE(pdf(p, x) >= -1e-15);
            REQUIRE(pdf(p, x) == pdf(p, -x));
        }
    }
}

TEST_CASE("lambda parameters", "[statmodel]") {
    const GaussianHoleParams p{0.9, 0.01, 0.5};
    CHECK(p.lambda0() == Approx(std::sqrt(0.5)));
    CHECK(p.lambda1() == Approx(std::sqrt(0.5 * 0.01 / 0.51)));
    CHECK(p.lambda1() < p.lambda0());
}

TEST_CASE("invalid parameters are rejected", "[statmodel]") {
    CHECK_THROWS_AS(pdf({1.2, 0.01, 0.5}, 0.0), ParameterError);
    CHECK_THROWS_AS(pdf({-0.1, 0.01, 0.5}, 0.0), ParameterError);
    CHECK_THROWS_AS(pdf({0.5, 0.5, 0.5}, 0.0), ParameterError);
    CHECK_THROWS_AS(pdf({0.5, 0.01, 0.0}, 0.0), ParameterError);
    CHECK_THROWS_AS(pdf({0.5, -0.01, 0.5}, 0.0), ParameterError);
    CHECK_THROWS_AS(moments({2.0, 0.01, 0.5}), ParameterError);
    CHECK_THROWS_AS(GaussianHoleSampler({0.5, 0.6, 0.5}), ParameterError);
    CHECK_NOTHROW(GaussianHoleParams{1.0, 0.49, 0.5}.validate());
}

TEST_CASE("closed-form moments agree with quadrature", "[statmodel]") {
    const auto g = moments(GaussianHoleParams::gaussian(0.7));
    CHECK(g.variance == Approx(0.7).epsilon(1e-14));
    CHECK(g.fourth == Approx(3.0 * 0.49).epsilon(1e-14));
    CHECK(moments({1.0, 1e-14, 0.5}).variance == Approx(0.5).epsilon(1e-6));

    auto params = random_params(20, 77);
    for (const auto& row : kReferenceFits) params.push_back(row.params);
    for (const auto& p : params) {
        const double l0 = p.lambda0();
        const auto m = moments(p);
        const auto br = test::hole_breaks(p);
        const double var = test::integrate([&](double x) { return x * x * pdf(p, x); }, -12 * l0, 12 * l0, br);
        const double m4 = test::integrate([&](double x) { return std::pow(x, 4) * pdf(p, x); }, -14 * l0, 14 * l0, br);
        CHECK(m.variance == Approx(var).margin(1e-9));
        CHECK(m.fourth == Approx(m4).margin(1e-9));
    }
}

TEST_CASE("hole shape has two symmetric modes", "[statmodel]") {
    for (const auto& row : kReferenceFits) {
        const auto& p = row.params;
        int maxima = 0;
        double mode = 0.0;
        const double step = 1e-4;
        for (double x = -3.0; x <= 3.0; x += step) {
            const double f = pdf(p, x);
            if (f > pdf(p, x - step) && f > pdf(p, x + step)) {
                ++maxima;
                if (x > 0) mode = x;
            }
        }
        CHECK(maxima == 2);
        CHECK(pdf(p, 0.0) < pdf(p, 1e-3));
        CHECK(pdf(p, mode) == Approx(pdf(p, -mode)));
    }
}

TEST_CASE("complex density is the product of marginals", "[statmodel]") {
    const auto g = GaussianHoleParams::gaussian(0.5);
    for (double r : {0.2, 0.7, 1.3}) {
        const double a = complex_pdf(g, r, 0.0);
        for (double th : {0.3, 1.1, 2.5})
            CHECK(complex_pdf(g, r * std::cos(th), r * std::sin(th)) == Approx(a).epsilon(1e-12));
    }

    const auto& p = test::reference_params(40.0);
    double xs = 0.0, best = 0.0;
    for (double x = 0.0; x < 2.0; x += 1e-4)
        if (pdf(p, x) > best) best = pdf(p, x), xs = x;
    const double peak = complex_pdf(p, xs, xs);
    for (double sx : {-1.0, 1.0})
        for (double sy : {-1.0, 1.0}) CHECK(complex_pdf(p, sx * xs, sy * xs) == Approx(peak).epsilon(1e-14));
    CHECK(complex_pdf(p, xs, 0.0) < peak);
    CHECK(complex_pdf(p, 0.0, 0.0) < complex_pdf(p, xs, 0.0));

    const double l0 = p.lambda0();
    const auto br = test::hole_breaks(p);
    const double plane = test::integrate(
        [&](double y) {
            return test::integrate([&](double x) { return complex_pdf(p, x, y); }, -8 * l0, 8 * l0, br);
        },
        -8 * l0, 8 * l0, br);
    CHECK(plane == Approx(1.0).margin(1e-5));
}

TEST_CASE("rejection sampler", "[statmodel]") {
    SECTION("no hole accepts every proposal") {
        GaussianHoleSampler s(GaussianHoleParams{0.0, 0.01, 0.5});
        Rng rng(1);
        for (int i = 0; i < 1000; ++i) s(rng);
        CHECK(s.accepted() == s.proposals());
        CHECK(s.expected_acceptance() == 1.0);
    }
    SECTION("acceptance rate matches the envelope bound") {
        const auto& p = test::reference_params(60.0);
        GaussianHoleSampler s(p);
        CHECK(s.expected_acceptance() == Approx((p.lambda0() - p.depth * p.lambda1()) / p.lambda0()));
        Rng rng(2);
        while (s.proposals() < 1000000) s(rng);
        const double rate = static_cast<double>(s.accepted()) / static_cast<double>(s.proposals());
        CHECK(rate == Approx(s.expected_acceptance()).margin(0.002));
    }
    SECTION("samples pass a KS test against the quadrature CDF") {
        const auto& p = test::reference_params(40.0);
        const test::QuadratureCdf cdf(p);
        GaussianHoleSampler s(p);
        Rng rng(3);
        std::vector<double> x(100000);
        for (auto& v : x) v = s(rng);
        std::sort(x.begin(), x.end());
        double d = 0.0;
        const double n = static_cast<double>(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double f = cdf(x[i]);
            d = std::max({d, f - i / n, (i + 1) / n - f});
        }
        CHECK(d < 1.63 / std::sqrt(n));
    }
    SECTION("free-function sampler is reproducible") {
        Rng a(9), b(9);
        CHECK(sample({0.9, 0.001, 0.5}, a) == sample({0.9, 0.001, 0.5}, b));
    }
}

TEST_CASE("log-likelihood equals the sum of log densities", "[statmodel]") {
    const GaussianHoleParams p{0.93, 0.003, 0.46};
    std::vector<double> x{-1.2, -0.3, -0.01, 0.0, 0.02, 0.4, 0.9, 2.1};
    double direct = 0.0;
    for (double v : x) direct += std::log(pdf(p, v));
    CHECK(log_likelihood(p, x) == Approx(direct).epsilon(1e-12));
    const auto g = GaussianHoleParams::gaussian(0.5);
    direct = 0.0;
    for (double v : x) direct += std::log(pdf(g, v));
    CHECK(log_likelihood(g, x) == Approx(direct).epsilon(1e-12));
}

TEST_CASE("key-value parameter text round-trips", "[statmodel]") {
    const GaussianHoleParams p{0.9218, 0.0008, 0.4818};
    const auto text = to_key_value(p);
    const auto q = parse_key_value(text);
    CHECK(q.depth == p.depth);
    CHECK(q.inner_variance == p.inner_variance);
    CHECK(q.outer_variance == p.outer_variance);

    const auto c = parse_key_value("# fitted\nsigma_O_sq = 0.5  # outer\n K=0.25\nsigma_I_sq=1e-3\n\n");
    CHECK(c.depth == 0.25);
    CHECK(c.inner_variance == 1e-3);
    CHECK_THROWS_AS(parse_key_value("K = 0.5\nsigma_I_sq = 0.1\n"), ParameterError);
    CHECK_THROWS_AS(parse_key_value("K = 0.5\nsigma_I_sq = 0.1\nsigma_O_sq = 1\nfoo = 2\n"), ParameterError);
    CHECK_THROWS_AS(parse_key_value("K = abc\nsigma_I_sq = 0.1\nsigma_O_sq = 1\n"), ParameterError);
    CHECK_THROWS_AS(parse_key_value("K = 2\nsigma_I_sq = 0.1\nsigma_O_sq = 1\n"), ParameterError);
}
