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

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mediumband/experiments.hpp"

namespace mediumband {

std::string format_number(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.16e", value);
    return buf;
}

void write_ber_csv(std::ostream& out, const std::vector<BerCurve>& curves) {
    out << "scheme,pds,gamma_bar_db,bits,errors,ber,stderr,undersampled,rayleigh_analytic\n";
    for (const auto& curve : curves)
        for (const auto& pt : curve.points)
            out << to_string(curve.scheme) << ',' << format_number(curve.pds) << ','
                << format_number(pt.gamma_bar_db) << ',' << pt.bits << ',' << pt.errors << ','
                << format_number(pt.ber) << ',' << format_number(pt.std_error) << ','
                << (pt.undersampled ? 1 : 0) << ',' << format_number(pt.rayleigh_analytic)
                << '\n';
}

void write_pdf_csv(std::ostream& out, const std::vector<EnsembleStats>& ensembles) {
    out << "pds,sample_index,re_g,im_g\n";
    for (const auto& e : ensembles) {
        const std::string pds = format_number(e.pds);
        for (std::size_t i = 0; i < e.re_g.size(); ++i)
            out << pds << ',' << i << ',' << format_number(e.re_g[i]) << ','
                << format_number(e.im_g[i]) << '\n';
    }
}

void write_fit_csv(std::ostream& out, const std::vector<FitRow>& rows) {
    out << "pds,K,sigma_I_sq,sigma_O_sq,loglik\n";
    for (const auto& r : rows)
        out << format_number(r.pds) << ',' << format_number(r.params.depth) << ','
            << format_number(r.params.inner_variance) << ','
            << format_number(r.params.outer_variance) << ',' << format_number(r.log_likelihood)
            << '\n';
}

void write_sir_csv(std::ostream& out, const std::vector<SirRow>& rows) {
    out << "pds,mean_sir_db,realizations\n";
    for (const auto& r : rows)
        out << format_number(r.pds) << ',' << format_number(r.mean_sir_db) << ','
            << r.realizations << '\n';
}

void write_scatter_csv(std::ostream& out, const std::vector<ScatterSamples>& sets) {
    out << "pds,sample_index,re_h,im_h,re_g,im_g\n";
    for (const auto& s : sets) {
        const std::string pds = format_number(s.pds);
        for (std::size_t i = 0; i < s.g.size(); ++i)
            out << pds << ',' << i << ',' << format_number(s.h[i].real()) << ','
                << format_number(s.h[i].imag()) << ',' << format_number(s.g[i].real()) << ','
                << format_number(s.g[i].imag()) << '\n';
    }
}

std::map<double, PdfColumns> read_pdf_csv(std::istream& in) {
    std::string line;
    // A zero-byte table holds no samples; callers decide whether that is enough.
    if (!std::getline(in, line)) return {};
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "pds,sample_index,re_g,im_g")
        throw std::runtime_error("pdf table header must be 'pds,sample_index,re_g,im_g', got '" +
                                 line + "'");
    std::map<double, PdfColumns> groups;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        double fields[4];
        std::size_t pos = 0;
        for (int f = 0; f < 4; ++f) {
            const std::size_t end = line.find(',', pos);
            if ((f < 3) != (end != std::string::npos))
                throw std::runtime_error("pdf table line " + std::to_string(line_no) +
                                         ": expected 4 fields");
            const std::string cell = line.substr(pos, end == std::string::npos ? end : end - pos);
            try {
                std::size_t used = 0;
                fields[f] = std::stod(cell, &used);
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw std::runtime_error("pdf table line " + std::to_string(line_no) +
                                         ": bad number '" + cell + "'");
            }
            pos = end + 1;
        }
        auto& g = groups[fields[0]];
        g.re_g.push_back(fields[2]);
        g.im_g.push_back(fields[3]);
    }
    return groups;
}

} // namespace mediumband
