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
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mediumband/channel.hpp"
#include "mediumband/statmodel.hpp"

namespace mediumband {

enum class Scheme { kNarrowband, kOneTap, kTwoTapSic, kLowerBound };

/// "narrowband-rayleigh-sim", "1-tap", "2-tap-sic", "lower-bound".
std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);
const std::vector<Scheme>& all_schemes();

/// Full experiment description. Defaults are the reference link-level setup:
/// N = 10 equal-power Rayleigh paths, T_s = 1, raised cosine with roll-off
/// 0.22 over 12 symbols, 100-bit BPSK frames.
struct SimConfig {
    std::size_t num_paths = 10;
    double symbol_period = 1.0;
    std::vector<double> pds_list{20.0};
    double rolloff = 0.22;
    int span = 12;
    std::size_t frame_len = 100;
    std::vector<double> snr_grid_db{0, 5, 10, 15, 20, 25, 30, 35, 40, 45};

    // BER stopping rule: a point stops once it has target_errors errors and at
    // least min_bits bits, or when it reaches max_bits.
    std::uint64_t target_errors = 200;
    std::uint64_t min_bits = 0;
    std::uint64_t max_bits = 100'000'000;
    std::size_t frames_per_batch = 1000;

    std::size_t samples = 1'000'000;         // pdf / scatter ensemble size
    std::size_t sir_realizations = 100'000;  // per PDS
    std::size_t power_realizations = 20'000; // signal-power estimate for the SNR convention

    std::uint64_t master_seed = 1;
    std::vector<Scheme> schemes = all_schemes();
    SyncObjective sync = SyncObjective::kPerRail;
    unsigned threads = 0; // 0 = machine parallelism; never changes results

    /// Throws ConfigError.
    void validate() const;
    PulseShape pulse() const;
    ProfileSpec profile_spec(double pds) const;
};

struct BerPoint {
    double gamma_bar_db = 0.0;
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double ber = 0.0;
    double std_error = 0.0;
    bool undersampled = false;     // stopped before reaching target_errors
    double rayleigh_analytic = 0.0; // ISI-free Rayleigh reference at this SNR
};

struct BerCurve {
    Scheme scheme = Scheme::kOneTap;
    double pds = 0.0;
    double signal_power = 1.0; // P_signal used for the noise variance
    std::vector<BerPoint> points;
};

struct EnsembleStats {
    double pds = 0.0;
    std::vector<double> re_g;
    std::vector<double> im_g;
    FitResult fit;                        // fit of Re{g}
    std::optional<std::string> fit_error; // set when fit failed; `fit` is best-so-far
    DipStatistic dip;                     // dip of Re{g}
    double mean_sir_db = 0.0;
    double mean_desired_power = 0.0;
    double mean_energy = 0.0;
};

struct SirRow {
    double pds = 0.0;
    double mean_sir_db = 0.0;
    std::size_t realizations = 0;
};

struct ScatterSamples {
    double pds = 0.0;
    std::vector<cdouble> h;
    std::vector<cdouble> g;
};

/// Ensemble of synchronized desired factors, its Gaussian-hole fit and dip.
EnsembleStats run_pdf_ensemble(const SimConfig& config, double pds);

/// Ratio-of-means SIR, 10 log10(E|c_0|^2 / E sum_{k != 0} |c_k|^2), per PDS.
std::vector<SirRow> run_sir_sweep(const SimConfig& config);

/// h and g drawn from the same profiles.
ScatterSamples run_scatter(const SimConfig& config, double pds);

/// Ensemble mean of sum_k |c_k|^2 for synchronized channels at this PDS.
double estimate_signal_power(const SimConfig& config, double pds);

/// One curve per (scheme, PDS). All schemes at a PDS share profiles, bits and
/// noise draws (paired seeds); the same draws are reused across SNR points.
std::vector<BerCurve> run_ber_sweep(const SimConfig& config);

// ---- tables -----------------------------------------------------------------

/// scheme,pds,gamma_bar_db,bits,errors,ber,stderr,undersampled,rayleigh_analytic
void write_ber_csv(std::ostream& out, const std::vector<BerCurve>& curves);
/// pds,sample_index,re_g,im_g
void write_pdf_csv(std::ostream& out, const std::vector<EnsembleStats>& ensembles);

struct FitRow {
    double pds = 0.0;
    GaussianHoleParams params;
    double log_likelihood = 0.0;
};
/// pds,K,sigma_I_sq,sigma_O_sq,loglik
void write_fit_csv(std::ostream& out, const std::vector<FitRow>& rows);
/// pds,mean_sir_db,realizations
void write_sir_csv(std::ostream& out, const std::vector<SirRow>& rows);
/// pds,sample_index,re_h,im_h,re_g,im_g
void write_scatter_csv(std::ostream& out, const std::vector<ScatterSamples>& sets);

struct PdfColumns {
    std::vector<double> re_g;
    std::vector<double> im_g;
};
/// Reads pdf.csv back, grouped by PDS. An empty stream yields no groups.
/// Throws std::runtime_error on a malformed header or row.
std::map<double, PdfColumns> read_pdf_csv(std::istream& in);

/// Full-precision scientific formatting used by every table.
std::string format_number(double value);

} // namespace mediumband
