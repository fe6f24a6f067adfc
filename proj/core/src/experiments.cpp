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
#include <limits>
#include <string>

#include "mediumband/detection.hpp"
#include "mediumband/errors.hpp"
#include "mediumband/experiments.hpp"
#include "mediumband/parallel.hpp"
#include "mediumband/random.hpp"

namespace mediumband {

// ---- schemes and config -----------------------------------------------------

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
    case Scheme::kNarrowband: return "narrowband-rayleigh-sim";
    case Scheme::kOneTap: return "1-tap";
    case Scheme::kTwoTapSic: return "2-tap-sic";
    case Scheme::kLowerBound: return "lower-bound";
    }
    return "unknown";
}

Scheme parse_scheme(std::string_view name) {
    for (const Scheme s : all_schemes())
        if (to_string(s) == name) return s;
    throw ConfigError("unknown scheme '" + std::string(name) +
                      "' (expected narrowband-rayleigh-sim, 1-tap, 2-tap-sic or lower-bound)");
}

const std::vector<Scheme>& all_schemes() {
    static const std::vector<Scheme> schemes{Scheme::kNarrowband, Scheme::kOneTap,
                                             Scheme::kTwoTapSic, Scheme::kLowerBound};
    return schemes;
}

void SimConfig::validate() const {
    if (num_paths == 0) throw ConfigError("number of paths must be at least 1");
    if (!(symbol_period > 0.0)) throw ConfigError("symbol period must be positive");
    if (pds_list.empty()) throw ConfigError("at least one PDS value is required");
    for (const double p : pds_list)
        if (!(p >= 0.0 && p <= 100.0))
            throw ConfigError("PDS " + format_number(p) +
                              "% is outside [0, 100]: only narrowband and mediumband "
                              "channels are supported");
    pulse().validate();
    if (frame_len == 0) throw ConfigError("frame length must be positive");
    if (frames_per_batch == 0) throw ConfigError("frames per batch must be positive");
    if (max_bits == 0) throw ConfigError("max_bits must be positive");
    if (schemes.empty()) throw ConfigError("at least one scheme is required");
    if (samples == 0) throw ConfigError("sample count must be positive");
    if (sir_realizations == 0) throw ConfigError("SIR realization count must be positive");
    if (power_realizations == 0) throw ConfigError("power realization count must be positive");
    for (const double s : snr_grid_db)
        if (!std::isfinite(s)) throw ConfigError("SNR grid values must be finite");
}

PulseShape SimConfig::pulse() const {
    PulseShape p;
    p.rolloff = rolloff;
    p.span = span;
    p.symbol_period = symbol_period;
    return p;
}

ProfileSpec SimConfig::profile_spec(double pds_percent) const {
    return ProfileSpec::from_pds(pds_percent, num_paths, symbol_period);
}

namespace {

constexpr std::size_t kEnsembleBatch = 1000;

// Runs visit(index, profile, rng) for `count` realizations, in batches of
// kEnsembleBatch with one substream per (label, pds, batch). Each index is
// visited exactly once and always with the same draws.
template <typename Visit>
void for_each_realization(const SimConfig& config, std::string_view label, double pds_value,
                          std::size_t count, Visit&& visit) {
    const ProfileSpec spec = config.profile_spec(pds_value);
    const std::size_t batches = (count + kEnsembleBatch - 1) / kEnsembleBatch;
    parallel_for(batches, config.threads, [&](std::size_t b) {
        Rng rng = make_stream(config.master_seed, {label_tag(label), value_tag(pds_value), b});
        const std::size_t end = std::min(count, (b + 1) * kEnsembleBatch);
        for (std::size_t i = b * kEnsembleBatch; i < end; ++i) {
            const MultipathProfile profile = sample_profile(spec, rng);
            visit(i, profile);
        }
    });
}

double ratio_db(double num, double den) {
    if (den <= 0.0) return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(num / den);
}

} // namespace

// ---- ensembles --------------------------------------------------------------

EnsembleStats run_pdf_ensemble(const SimConfig& config, double pds_value) {
    config.validate();
    const PulseShape pulse = config.pulse();
    const std::size_t n = config.samples;

    EnsembleStats stats;
    stats.pds = pds_value;
    stats.re_g.resize(n);
    stats.im_g.resize(n);
    std::vector<double> desired(n), interference(n);
    for_each_realization(config, "pdf", pds_value, n,
                         [&](std::size_t i, const MultipathProfile& profile) {
                             const DiscreteChannel ch =
                                 synchronized_channel(profile, pulse, config.sync);
                             const cdouble g = ch.desired();
                             stats.re_g[i] = g.real();
                             stats.im_g[i] = g.imag();
                             desired[i] = std::norm(g);
                             interference[i] = ch.interference_energy();
                         });

    double sum_desired = 0.0, sum_isi = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sum_desired += desired[i];
        sum_isi += interference[i];
    }
    stats.mean_desired_power = sum_desired / static_cast<double>(n);
    stats.mean_energy = (sum_desired + sum_isi) / static_cast<double>(n);
    stats.mean_sir_db = ratio_db(sum_desired, sum_isi);

    try {
        stats.fit = fit(stats.re_g);
    } catch (const FitError& e) {
        stats.fit = e.best();
        stats.fit_error = e.what();
    }
    stats.dip = dip_statistic(stats.re_g);
    return stats;
}

std::vector<SirRow> run_sir_sweep(const SimConfig& config) {
    config.validate();
    const PulseShape pulse = config.pulse();
    std::vector<SirRow> rows;
    for (const double p : config.pds_list) {
        const std::size_t n = config.sir_realizations;
        std::vector<double> desired(n), interference(n);
        for_each_realization(config, "sir", p, n,
                             [&](std::size_t i, const MultipathProfile& profile) {
                                 const DiscreteChannel ch =
                                     synchronized_channel(profile, pulse, config.sync);
                                 desired[i] = std::norm(ch.desired());
                                 interference[i] = ch.interference_energy();
                             });
        double sd = 0.0, si = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sd += desired[i];
            si += interference[i];
        }
        rows.push_back({p, ratio_db(sd, si), n});
    }
    return rows;
}

ScatterSamples run_scatter(const SimConfig& config, double pds_value) {
    config.validate();
    const PulseShape pulse = config.pulse();
    ScatterSamples out;
    out.pds = pds_value;
    out.h.resize(config.samples);
    out.g.resize(config.samples);
    for_each_realization(config, "scatter", pds_value, config.samples,
                         [&](std::size_t i, const MultipathProfile& profile) {
                             out.h[i] = narrowband_factor(profile);
                             const SamplingInstants t = synchronize(profile, pulse, config.sync);
                             const cdouble ci = desired_tap(profile, pulse, t.in_phase);
                             const cdouble cq = t.quadrature == t.in_phase
                                                    ? ci
                                                    : desired_tap(profile, pulse, t.quadrature);
                             out.g[i] = {ci.real(), cq.imag()};
                         });
    return out;
}

double estimate_signal_power(const SimConfig& config, double pds_value) {
    const PulseShape pulse = config.pulse();
    std::vector<double> energy(config.power_realizations);
    for_each_realization(config, "power", pds_value, energy.size(),
                         [&](std::size_t i, const MultipathProfile& profile) {
                             energy[i] =
                                 synchronized_channel(profile, pulse, config.sync).energy();
                         });
    double sum = 0.0;
    for (const double e : energy) sum += e;
    return sum / static_cast<double>(energy.size());
}

// ---- BER sweep --------------------------------------------------------------

namespace {

struct Tally {
    std::uint64_t bits = 0;
    std::uint64_t errors = 0;
    double frame_sq = 0.0; // sum over frames of (errors in frame)^2
};

std::size_t errors_1tap(std::span<const cdouble> r, cdouble g, const Frame& frame) {
    // A zero desired factor only happens on a measure-zero event; the tie
    // rule then decides every bit as 0.
    if (g == cdouble{0.0, 0.0}) return static_cast<std::size_t>(
        std::count(frame.bits.begin(), frame.bits.end(), std::uint8_t{1}));
    return count_bit_errors(frame.bits, detect_1tap(r, g));
}

std::size_t errors_sic(std::span<const cdouble> r, const DiscreteChannel& ch, const Frame& frame) {
    if (ch.desired() == cdouble{0.0, 0.0}) return errors_1tap(r, ch.desired(), frame);
    const auto intf = ch.strongest_interferer();
    return count_bit_errors(frame.bits,
                            detect_2tap_sic(r, ch.desired(), intf.tap, intf.offset).bits);
}

} // namespace

std::vector<BerCurve> run_ber_sweep(const SimConfig& config) {
    config.validate();
    const PulseShape pulse = config.pulse();
    const std::size_t n_snr = config.snr_grid_db.size();
    const std::size_t n_schemes = config.schemes.size();
    const std::size_t n_combo = n_snr * n_schemes;
    const std::uint64_t bits_per_batch =
        static_cast<std::uint64_t>(config.frames_per_batch) * config.frame_len;
    const std::size_t max_batches =
        static_cast<std::size_t>((config.max_bits + bits_per_batch - 1) / bits_per_batch);
    const unsigned workers = resolve_threads(config.threads);

    bool need_mediumband = false, need_narrowband = false;
    for (const Scheme s : config.schemes) {
        if (s == Scheme::kNarrowband) need_narrowband = true;
        else need_mediumband = true;
    }

    std::vector<BerCurve> curves;
    for (const double p : config.pds_list) {
        const ProfileSpec spec = config.profile_spec(p);
        const double mediumband_power = need_mediumband ? estimate_signal_power(config, p) : 1.0;
        // Equal average path powers summing to one: E|h|^2 = 1 exactly.
        const double narrowband_power = 1.0;

        std::vector<double> sigma_mb(n_snr), sigma_nb(n_snr);
        for (std::size_t s = 0; s < n_snr; ++s) {
            sigma_mb[s] = std::sqrt(SnrPoint{config.snr_grid_db[s], mediumband_power}.noise_variance());
            sigma_nb[s] = std::sqrt(SnrPoint{config.snr_grid_db[s], narrowband_power}.noise_variance());
        }

        std::vector<Tally> totals(n_combo);
        std::vector<bool> done(n_combo, false);
        const auto finished = [&](const Tally& t) {
            return (t.errors >= config.target_errors && t.bits >= config.min_bits) ||
                   t.bits >= config.max_bits;
        };

        std::size_t next_batch = 0;
        while (next_batch < max_batches &&
               std::find(done.begin(), done.end(), false) != done.end()) {
            const std::vector<bool> stopped = done;
            const std::size_t wave = std::min<std::size_t>(workers * 2, max_batches - next_batch);
            std::vector<std::vector<Tally>> results(wave, std::vector<Tally>(n_combo));

            parallel_for(wave, config.threads, [&](std::size_t w) {
                const std::size_t batch = next_batch + w;
                Rng rng = make_stream(config.master_seed, {label_tag("ber"), value_tag(p), batch});
                std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
                std::vector<cdouble> noise(config.frame_len), r(config.frame_len);
                auto& tally = results[w];

                for (std::size_t f = 0; f < config.frames_per_batch; ++f) {
                    const MultipathProfile profile = sample_profile(spec, rng);
                    const Frame frame = Frame::random(config.frame_len, rng);
                    for (auto& z : noise) {
                        const double re = normal(rng);
                        z = {re, normal(rng)};
                    }
                    DiscreteChannel channel;
                    std::vector<cdouble> clean;
                    if (need_mediumband) {
                        channel = synchronized_channel(profile, pulse, config.sync);
                        clean = convolve(frame.symbols, channel);
                    }
                    const cdouble h = need_narrowband ? narrowband_factor(profile) : cdouble{};
                    const cdouble g = channel.desired();

                    for (std::size_t s = 0; s < n_snr; ++s) {
                        for (std::size_t m = 0; m < n_schemes; ++m) {
                            const std::size_t c = s * n_schemes + m;
                            if (stopped[c]) continue;
                            std::size_t errs = 0;
                            switch (config.schemes[m]) {
                            case Scheme::kNarrowband:
                                for (std::size_t k = 0; k < r.size(); ++k)
                                    r[k] = h * frame.symbols[k] + sigma_nb[s] * noise[k];
                                errs = errors_1tap(r, h, frame);
                                break;
                            case Scheme::kOneTap:
                            case Scheme::kTwoTapSic:
                                for (std::size_t k = 0; k < r.size(); ++k)
                                    r[k] = clean[k] + sigma_mb[s] * noise[k];
                                errs = config.schemes[m] == Scheme::kOneTap
                                           ? errors_1tap(r, g, frame)
                                           : errors_sic(r, channel, frame);
                                break;
                            case Scheme::kLowerBound:
                                for (std::size_t k = 0; k < r.size(); ++k)
                                    r[k] = g * frame.symbols[k] + sigma_mb[s] * noise[k];
                                errs = errors_1tap(r, g, frame);
                                break;
                            }
                            tally[c].bits += config.frame_len;
                            tally[c].errors += errs;
                            tally[c].frame_sq += static_cast<double>(errs) * errs;
                        }
                    }
                }
            });

            // Merge in batch order so the stopping point never depends on the wave size.
            for (std::size_t w = 0; w < wave; ++w) {
                for (std::size_t c = 0; c < n_combo; ++c) {
                    if (done[c]) continue;
                    totals[c].bits += results[w][c].bits;
                    totals[c].errors += results[w][c].errors;
                    totals[c].frame_sq += results[w][c].frame_sq;
                    if (finished(totals[c])) done[c] = true;
                }
            }
            next_batch += wave;
        }

        for (std::size_t m = 0; m < n_schemes; ++m) {
            BerCurve curve;
            curve.scheme = config.schemes[m];
            curve.pds = p;
            curve.signal_power =
                config.schemes[m] == Scheme::kNarrowband ? narrowband_power : mediumband_power;
            for (std::size_t s = 0; s < n_snr; ++s) {
                const Tally& t = totals[s * n_schemes + m];
                BerPoint pt;
                pt.gamma_bar_db = config.snr_grid_db[s];
                pt.bits = t.bits;
                pt.errors = t.errors;
                pt.ber = t.bits ? static_cast<double>(t.errors) / static_cast<double>(t.bits) : 0.0;
                // Bits inside a frame share one channel, so the frame is the
                // independent unit.
                const double frames = static_cast<double>(t.bits) / config.frame_len;
                if (frames > 1.0) {
                    const double mean = static_cast<double>(t.errors) / frames;
                    const double var = std::max(0.0, (t.frame_sq - frames * mean * mean) / (frames - 1.0));
                    pt.std_error = std::sqrt(var / frames) / config.frame_len;
                }
                pt.undersampled = t.errors < config.target_errors;
                pt.rayleigh_analytic = rayleigh_ber_analytic(pt.gamma_bar_db);
                curve.points.push_back(pt);
            }
            curves.push_back(std::move(curve));
        }
    }
    return curves;
}

} // namespace mediumband
