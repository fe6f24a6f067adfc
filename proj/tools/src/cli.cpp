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

#include "mediumband/cli/cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "mediumband/errors.hpp"
#include "mediumband/statmodel.hpp"
#include "mediumband/version.hpp"

namespace mediumband::cli {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view text) {
    std::vector<std::string> items;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find(',', pos), text.size());
        std::string item = trim(text.substr(pos, end - pos));
        if (!item.empty()) items.push_back(std::move(item));
        pos = end + 1;
    }
    return items;
}

std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& item : items) {
        if (!s.empty()) s += ',';
        s += item;
    }
    return s;
}

std::string number_text(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_real(const std::string& key, const std::string& text) {
    double v = 0.0;
    const char* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        throw ConfigError(key + ": '" + text + "' is not a finite number");
    return v;
}

std::uint64_t parse_count(const std::string& key, const std::string& text) {
    std::uint64_t v = 0;
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec == std::errc{} && ptr != end) {
        // Accept integral values written in scientific notation (1e6).
        const double d = parse_real(key, text);
        if (d >= 0.0 && d < 1.8e19 && std::floor(d) == d) return static_cast<std::uint64_t>(d);
    }
    if (ec != std::errc{} || ptr != end)
        throw ConfigError(key + ": '" + text + "' is not a non-negative integer");
    return v;
}

const Settings& lookup_defaults() {
    static const Settings defaults = [] {
        const SimConfig c;
        std::vector<std::string> pds, schemes;
        for (const double p : c.pds_list) pds.push_back(number_text(p));
        for (const Scheme s : c.schemes) schemes.emplace_back(to_string(s));
        return Settings{
            {"paths", std::to_string(c.num_paths)},
            {"symbol_period", number_text(c.symbol_period)},
            {"pds", join(pds)},
            {"rolloff", number_text(c.rolloff)},
            {"span", std::to_string(c.span)},
            {"frame_len", std::to_string(c.frame_len)},
            {"snr_min", "0"},
            {"snr_max", "45"},
            {"snr_step", "5"},
            {"target_errors", std::to_string(c.target_errors)},
            {"min_bits", std::to_string(c.min_bits)},
            {"max_bits", std::to_string(c.max_bits)},
            {"frames_per_batch", std::to_string(c.frames_per_batch)},
            {"samples", std::to_string(c.samples)},
            {"realizations", std::to_string(c.sir_realizations)},
            {"power_realizations", std::to_string(c.power_realizations)},
            {"schemes", join(schemes)},
            {"sync", std::string(to_string(c.sync))},
            {"threads", "0"},
        };
    }();
    return defaults;
}

void check_key(const std::string& key) {
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
        throw ConfigError("unknown config key '" + key + "'");
}

std::string utc_timestamp(std::chrono::system_clock::time_point t) {
    const std::time_t tt = std::chrono::system_clock::to_time_t(t);
    std::tm tm{};
    gmtime_r(&tt, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

class RuntimeFailure : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Collects written files and writes them under the output directory.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec || !fs::is_directory(dir_))
            throw ConfigError("cannot create output directory '" + dir_.string() + "'");
    }

    void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
        const fs::path path = dir_ / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw ConfigError("cannot write '" + path.string() + "'");
        body(out);
        out.flush();
        if (!out) throw RuntimeFailure("write failed for '" + path.string() + "'");
        files_.push_back(name);
    }

    const fs::path& dir() const { return dir_; }
    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    std::vector<std::string> files_;
};

std::string pds_label(double pds) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", pds);
    return buf;
}

void write_params_files(OutputSet& outputs, const std::vector<FitRow>& rows) {
    for (const auto& row : rows)
        outputs.write("params_pds" + pds_label(row.pds) + ".txt",
                      [&](std::ostream& o) { o << to_key_value(row.params); });
}

// Shared state of one invocation.
struct Invocation {
    std::string command;
    std::map<std::string, std::string> flags; // settings given on the command line
    std::string config_path;
    std::string out_dir = ".";
    std::string input;
};

Settings merge_settings(const Invocation& inv) {
    Settings s = lookup_defaults();
    if (const char* env = std::getenv("MEDIUMBAND_SEED"); env && *env) s["seed"] = trim(env);
    if (!inv.config_path.empty())
        for (const auto& [k, v] : read_settings_file(inv.config_path)) s[k] = v;
    for (const auto& [k, v] : inv.flags) s[k] = v;
    if (!s.contains("seed")) s["seed"] = "1";
    return s;
}

int execute(const Invocation& inv, std::ostream& out, std::ostream& err) {
    const auto started = std::chrono::system_clock::now();
    const auto t0 = std::chrono::steady_clock::now();

    const Settings settings = merge_settings(inv);
    SimConfig config = resolve_config(settings);
    OutputSet outputs(inv.out_dir);
    int status = kExitOk;

    if (inv.command == "ber") {
        const auto curves = run_ber_sweep(config);
        outputs.write("ber.csv", [&](std::ostream& o) { write_ber_csv(o, curves); });
    } else if (inv.command == "pdf") {
        std::vector<EnsembleStats> ensembles;
        std::vector<FitRow> rows;
        for (const double p : config.pds_list) {
            ensembles.push_back(run_pdf_ensemble(config, p));
            const auto& e = ensembles.back();
            rows.push_back({p, e.fit.params, e.fit.log_likelihood});
            err << "pdf: PDS " << pds_label(p) << "%: K=" << e.fit.params.depth
                << " sigma_I_sq=" << e.fit.params.inner_variance
                << " sigma_O_sq=" << e.fit.params.outer_variance << " dip=" << e.dip.depth
                << (e.dip.bimodal ? " (bimodal)" : "") << " mean SIR=" << e.mean_sir_db << " dB\n";
            if (e.fit_error) {
                err << "pdf: fit failed at PDS " << pds_label(p) << "%: " << *e.fit_error << '\n';
                status = kExitRuntime;
            }
        }
        outputs.write("pdf.csv", [&](std::ostream& o) { write_pdf_csv(o, ensembles); });
        outputs.write("fit.csv", [&](std::ostream& o) { write_fit_csv(o, rows); });
        write_params_files(outputs, rows);
    } else if (inv.command == "sir") {
        const auto rows = run_sir_sweep(config);
        outputs.write("sir.csv", [&](std::ostream& o) { write_sir_csv(o, rows); });
    } else if (inv.command == "scatter") {
        std::vector<ScatterSamples> sets;
        for (const double p : config.pds_list) sets.push_back(run_scatter(config, p));
        outputs.write("scatter.csv", [&](std::ostream& o) { write_scatter_csv(o, sets); });
    } else if (inv.command == "fit") {
        if (inv.input.empty()) throw ConfigError("fit requires --input <pdf.csv>");
        std::ifstream in(inv.input, std::ios::binary);
        if (!in) throw RuntimeFailure("cannot open input '" + inv.input + "'");
        std::map<double, PdfColumns> groups;
        try {
            groups = read_pdf_csv(in);
        } catch (const std::runtime_error& e) {
            throw RuntimeFailure(inv.input + ": " + e.what());
        }
        if (groups.empty())
            throw RuntimeFailure("insufficient samples: '" + inv.input +
                                 "' holds 0 samples (need at least " +
                                 std::to_string(FitOptions{}.min_samples) + ")");
        std::vector<FitRow> rows;
        for (const auto& [p, cols] : groups) {
            const FitResult r = fit(cols.re_g); // FitError propagates
            rows.push_back({p, r.params, r.log_likelihood});
        }
        outputs.write("fit.csv", [&](std::ostream& o) { write_fit_csv(o, rows); });
        write_params_files(outputs, rows);
    }

    outputs.write("resolved_config.txt", [&](std::ostream& o) { o << format_settings(settings); });

    const auto finished = std::chrono::system_clock::now();
    nlohmann::ordered_json manifest;
    manifest["tool"] = "mediumband";
    manifest["version"] = kVersion;
    manifest["command"] = inv.command;
    manifest["seed"] = config.master_seed;
    if (!inv.input.empty()) manifest["input"] = inv.input;
    nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
    for (const auto& [k, v] : settings) cfg[k] = v;
    manifest["config"] = cfg;
    manifest["started_at"] = utc_timestamp(started);
    manifest["finished_at"] = utc_timestamp(finished);
    manifest["wall_time_s"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    manifest["outputs"] = outputs.files();
    outputs.write("manifest.json", [&](std::ostream& o) { o << manifest.dump(2) << '\n'; });

    for (const auto& f : outputs.files()) out << (outputs.dir() / f).string() << '\n';
    return status;
}

} // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [key, value] : lookup_defaults()) k.push_back(key);
        k.push_back("seed");
        return k;
    }();
    return keys;
}

Settings default_settings() { return lookup_defaults(); }

Settings parse_settings(std::string_view text) {
    Settings settings;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        check_key(key);
        settings[key] = trim(std::string_view(body).substr(eq + 1));
    }
    return settings;
}

Settings read_settings_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos || text[first] != '{') return parse_settings(text);

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config file '" + path.string() + "': " + e.what());
    }
    const nlohmann::json& cfg = doc.contains("config") ? doc["config"] : doc;
    if (!cfg.is_object())
        throw ConfigError("config file '" + path.string() + "': \"config\" must be an object");
    Settings settings;
    for (const auto& [key, value] : cfg.items()) {
        check_key(key);
        if (value.is_string()) {
            settings[key] = value.get<std::string>();
        } else if (value.is_array()) {
            std::vector<std::string> items;
            for (const auto& v : value) items.push_back(v.is_string() ? v.get<std::string>() : v.dump());
            settings[key] = join(items);
        } else {
            settings[key] = value.dump();
        }
    }
    return settings;
}

std::string format_settings(const Settings& settings) {
    std::string text = "# mediumband resolved configuration\n";
    for (const auto& [k, v] : settings) text += k + " = " + v + "\n";
    return text;
}

SimConfig resolve_config(const Settings& in) {
    Settings s = lookup_defaults();
    for (const auto& [k, v] : in) {
        check_key(k);
        s[k] = v;
    }
    SimConfig c;
    c.num_paths = parse_count("paths", s["paths"]);
    c.symbol_period = parse_real("symbol_period", s["symbol_period"]);
    c.pds_list.clear();
    for (const auto& item : split_list(s["pds"])) c.pds_list.push_back(parse_real("pds", item));
    c.rolloff = parse_real("rolloff", s["rolloff"]);
    const std::uint64_t span = parse_count("span", s["span"]);
    if (span > 10000) throw ConfigError("span: too large");
    c.span = static_cast<int>(span);
    c.frame_len = parse_count("frame_len", s["frame_len"]);

    const double lo = parse_real("snr_min", s["snr_min"]);
    const double hi = parse_real("snr_max", s["snr_max"]);
    const double step = parse_real("snr_step", s["snr_step"]);
    if (!(step > 0.0)) throw ConfigError("snr_step must be positive");
    if (hi < lo) throw ConfigError("snr_max must not be below snr_min");
    const double points = std::floor((hi - lo) / step + 1e-9) + 1.0;
    if (points > 10000) throw ConfigError("SNR grid has too many points");
    c.snr_grid_db.clear();
    for (int i = 0; i < static_cast<int>(points); ++i) c.snr_grid_db.push_back(lo + i * step);

    c.target_errors = parse_count("target_errors", s["target_errors"]);
    c.min_bits = parse_count("min_bits", s["min_bits"]);
    c.max_bits = parse_count("max_bits", s["max_bits"]);
    c.frames_per_batch = parse_count("frames_per_batch", s["frames_per_batch"]);
    c.samples = parse_count("samples", s["samples"]);
    c.sir_realizations = parse_count("realizations", s["realizations"]);
    c.power_realizations = parse_count("power_realizations", s["power_realizations"]);
    c.master_seed = s.contains("seed") ? parse_count("seed", s["seed"]) : 1;

    c.schemes.clear();
    for (const auto& name : split_list(s["schemes"])) {
        if (name == "all") {
            for (const Scheme sc : all_schemes())
                if (std::find(c.schemes.begin(), c.schemes.end(), sc) == c.schemes.end())
                    c.schemes.push_back(sc);
            continue;
        }
        const Scheme sc = parse_scheme(name);
        if (std::find(c.schemes.begin(), c.schemes.end(), sc) == c.schemes.end())
            c.schemes.push_back(sc);
    }
    c.sync = parse_sync_objective(s["sync"]);
    const std::uint64_t threads = parse_count("threads", s["threads"]);
    if (threads > 4096) throw ConfigError("threads: too large");
    c.threads = static_cast<unsigned>(threads);

    c.validate();
    return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"mediumband: link-level simulation of mediumband wireless channels", "mediumband"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    Invocation inv;
    struct FlagSpec {
        const char* flag;
        const char* key;
        const char* help;
    };
    static const FlagSpec scalar_flags[] = {
        {"--snr-min", "snr_min", "lowest average SNR in dB"},
        {"--snr-max", "snr_max", "highest average SNR in dB"},
        {"--snr-step", "snr_step", "SNR grid step in dB"},
        {"--schemes", "schemes", "comma list of schemes, or 'all'"},
        {"--seed", "seed", "master seed (fallback: MEDIUMBAND_SEED, then 1)"},
        {"--threads", "threads", "worker threads, 0 = machine parallelism"},
        {"--samples", "samples", "ensemble size for pdf and scatter"},
        {"--realizations", "realizations", "channel realizations per PDS for sir"},
        {"--power-realizations", "power_realizations", "realizations for the signal-power estimate"},
        {"--target-errors", "target_errors", "bit errors that stop a BER point"},
        {"--min-bits", "min_bits", "minimum bits per BER point"},
        {"--max-bits", "max_bits", "bit budget per BER point"},
        {"--frames-per-batch", "frames_per_batch", "frames per parallel batch"},
        {"--frame-len", "frame_len", "bits per frame"},
        {"--paths", "paths", "multipath components per profile"},
        {"--symbol-period", "symbol_period", "symbol period in seconds"},
        {"--rolloff", "rolloff", "raised-cosine roll-off"},
        {"--span", "span", "pulse truncation in symbol periods"},
        {"--sync", "sync", "timing rule: per-rail, desired-power or sir"},
    };

    std::map<std::string, std::string> scalar_values;
    std::vector<std::string> pds_values;
    std::vector<std::pair<CLI::App*, std::vector<std::pair<CLI::Option*, const char*>>>> subs;

    const auto add_common = [&](CLI::App* sub) {
        std::vector<std::pair<CLI::Option*, const char*>> opts;
        opts.emplace_back(sub->add_option("--pds", pds_values, "PDS in percent (repeatable)")
                              ->delimiter(','),
                          "pds");
        for (const auto& f : scalar_flags)
            opts.emplace_back(sub->add_option(f.flag, scalar_values[f.key], f.help), f.key);
        sub->add_option("--config", inv.config_path, "key = value file or JSON run manifest");
        sub->add_option("--out-dir", inv.out_dir, "output directory");
        subs.emplace_back(sub, std::move(opts));
        return sub;
    };
    add_common(app.add_subcommand("ber", "BER sweep for every scheme"));
    add_common(app.add_subcommand("pdf", "desired-factor ensemble, fit and dip"));
    add_common(app.add_subcommand("sir", "ensemble-mean SIR against PDS"));
    add_common(app.add_subcommand("scatter", "paired narrowband and mediumband factors"));
    add_common(app.add_subcommand("fit", "fit previously generated samples"))
        ->add_option("--input", inv.input, "pdf.csv to fit");

    std::vector<const char*> argv{"mediumband"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream o, eo;
        const int code = app.exit(e, o, eo);
        out << o.str();
        err << eo.str();
        return code == 0 ? kExitOk : kExitConfig;
    }

    for (const auto& [sub, opts] : subs) {
        if (!sub->parsed()) continue;
        inv.command = sub->get_name();
        for (const auto& [opt, key] : opts) {
            if (opt->count() == 0) continue;
            inv.flags[key] = std::string(key) == "pds" ? join(pds_values) : scalar_values[key];
        }
    }

    try {
        return execute(inv, out, err);
    } catch (const ConfigError& e) {
        err << "mediumband " << inv.command << ": configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ParameterError& e) {
        err << "mediumband " << inv.command << ": configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "mediumband " << inv.command << ": " << e.what() << '\n';
        return kExitRuntime;
    }
}

} // namespace mediumband::cli
