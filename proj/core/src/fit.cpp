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
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>
#include <gsl/gsl_vector.h>

#include "mediumband/errors.hpp"
#include "mediumband/statmodel.hpp"

namespace mediumband {

namespace {

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

// Unconstrained coordinates: (logit K, log sigma_O^2, logit sigma_I^2 / sigma_O^2).
GaussianHoleParams from_coordinates(const gsl_vector* v) {
    const double outer = std::exp(gsl_vector_get(v, 1));
    return {logistic(gsl_vector_get(v, 0)), outer * logistic(gsl_vector_get(v, 2)), outer};
}

struct Objective {
    std::span<const double> samples;
    int evaluations = 0;
};

double negative_log_likelihood(const gsl_vector* v, void* data) {
    auto* obj = static_cast<Objective*>(data);
    ++obj->evaluations;
    const GaussianHoleParams p = from_coordinates(v);
    try {
        const double ll = log_likelihood(p, obj->samples);
        return std::isfinite(ll) ? -ll : GSL_POSINF;
    } catch (const ParameterError&) {
        return GSL_POSINF;
    }
}

struct Run {
    double coords[3];
    double nll;
    int iterations;
};

Run minimise(Objective& objective, const double start[3], const FitOptions& options) {
    gsl_multimin_function fn{&negative_log_likelihood, 3, &objective};
    gsl_vector* x = gsl_vector_alloc(3);
    gsl_vector* step = gsl_vector_alloc(3);
    for (int i = 0; i < 3; ++i) gsl_vector_set(x, static_cast<std::size_t>(i), start[i]);
    gsl_vector_set(step, 0, 1.0);
    gsl_vector_set(step, 1, 0.2);
    gsl_vector_set(step, 2, 1.0);

    gsl_multimin_fminimizer* s =
        gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 3);
    gsl_multimin_fminimizer_set(s, &fn, x, step);

    // Converged when the simplex collapses or the best value stops moving
    // (the Gaussian limit leaves a flat ridge the simplex would chase).
    const int stall_window = 60;
    const double stall_tolerance = 1e-9 * static_cast<double>(objective.samples.size());
    // fval is only defined after the first iteration.
    double window_best = std::numeric_limits<double>::infinity();
    int since_window = 0;
    int iter = 0;
    for (; iter < options.max_iterations; ++iter) {
        if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
        if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), options.simplex_tolerance) ==
            GSL_SUCCESS)
            break;
        if (++since_window == stall_window) {
            if (window_best - s->fval < stall_tolerance) break;
            window_best = s->fval;
            since_window = 0;
        }
    }
    Run run{{gsl_vector_get(s->x, 0), gsl_vector_get(s->x, 1), gsl_vector_get(s->x, 2)},
            s->fval, iter};
    gsl_multimin_fminimizer_free(s);
    gsl_vector_free(step);
    gsl_vector_free(x);
    return run;
}

} // namespace

FitResult fit(std::span<const double> samples, const FitOptions& options) {
    const double n = static_cast<double>(samples.size());
    double mean = 0.0, sq = 0.0;
    for (const double x : samples) {
        mean += x;
        sq += x * x;
    }
    const double variance = samples.empty() ? 0.0 : sq / n - (mean / n) * (mean / n);

    FitResult initial{{0.9, 0.01 * variance, variance}, -std::numeric_limits<double>::infinity(),
                      0};
    if (samples.size() < options.min_samples)
        throw FitError("insufficient samples: " + std::to_string(samples.size()) + " < " +
                           std::to_string(options.min_samples),
                       initial);
    if (!(variance > 0.0) || !std::isfinite(variance))
        throw FitError("sample variance is not positive and finite", initial);

    gsl_set_error_handler_off();
    Objective objective{samples};
    const double start[3] = {logit(0.9), std::log(variance), logit(0.01)};
    Run run = minimise(objective, start, options);
    // One restart from the optimum re-inflates a simplex that collapsed early.
    const Run second = minimise(objective, run.coords, options);
    if (second.nll <= run.nll) run = {{second.coords[0], second.coords[1], second.coords[2]},
                                      second.nll, run.iterations + second.iterations};
    else run.iterations += second.iterations;

    gsl_vector_view v = gsl_vector_view_array(run.coords, 3);
    FitResult result{from_coordinates(&v.vector), -run.nll, run.iterations};
    if (!std::isfinite(run.nll)) throw FitError("likelihood is not finite at the optimum", result);
    try {
        result.params.validate();
    } catch (const ParameterError& e) {
        throw FitError(std::string("fit left the valid region: ") + e.what(), result);
    }
    return result;
}

} // namespace mediumband
