// Copyright 2026 The somdms Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "somdms/figures.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace somdms {

const char* family_name(Family f) {
    switch (f) {
        case Family::Rank2:
            return "rank2";
        case Family::Rank3:
            return "rank3";
        case Family::Mdms:
            return "mdms";
    }
    return "?";
}

Family parse_family(const std::string& name) {
    if (name == "rank2") return Family::Rank2;
    if (name == "rank3") return Family::Rank3;
    if (name == "mdms") return Family::Mdms;
    throw std::invalid_argument("unknown family '" + name + "' (expected rank2, rank3 or mdms)");
}

DensityMatrix4 family_state(Family f, const StateParams& params) {
    switch (f) {
        case Family::Rank2:
            return rank2(params.p, params.epsilon);
        case Family::Rank3:
            return rank3(params.m, params.epsilon);
        case Family::Mdms:
            return mdms(params);
    }
    throw std::invalid_argument("unknown family");
}

const char* variable_name(SweepVariable v) {
    switch (v) {
        case SweepVariable::Epsilon:
            return "epsilon";
        case SweepVariable::P:
            return "p";
        case SweepVariable::M:
            return "m";
    }
    return "?";
}

SweepVariable parse_variable(const std::string& name) {
    if (name == "eps" || name == "epsilon") return SweepVariable::Epsilon;
    if (name == "p") return SweepVariable::P;
    if (name == "m") return SweepVariable::M;
    throw std::invalid_argument("unknown sweep variable '" + name + "' (expected eps, p or m)");
}

std::vector<double> grid_values(double from, double to, double step) {
    if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("step must be positive");
    if (!(from <= to)) throw std::invalid_argument("sweep range is empty");
    const auto n = static_cast<long>(std::floor((to - from) / step + 1e-9)) + 1;
    if (n > 10'000'000) throw std::invalid_argument("sweep has too many points");
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) values.push_back(std::min(from + static_cast<double>(i) * step, to));
    return values;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.family == Family::Rank2 && spec.variable == SweepVariable::M) {
        throw std::invalid_argument("rank2 has no m parameter to sweep");
    }
    if (spec.family == Family::Rank3 && spec.variable == SweepVariable::P) {
        throw std::invalid_argument("rank3 has no p parameter to sweep");
    }
    if (spec.noise) {
        validate(*spec.noise);
        if (spec.noise->runs < 2) throw std::invalid_argument("noisy sweeps need at least two runs");
    }
    std::vector<SweepRow> rows;
    const std::vector<double> values = grid_values(spec.from, spec.to, spec.step);
    for (std::size_t i = 0; i < values.size(); ++i) {
        StateParams params = spec.fixed;
        switch (spec.variable) {
            case SweepVariable::Epsilon:
                params.epsilon = values[i];
                break;
            case SweepVariable::P:
                params.p = values[i];
                break;
            case SweepVariable::M:
                params.m = values[i];
                break;
        }
        const DensityMatrix4 rho = family_state(spec.family, params);
        SweepRow row;
        row.value = values[i];
        if (spec.noise) {
            NoiseConfig noise = *spec.noise;
            noise.seed += i;
            const CorrelationStats s = monte_carlo_correlations(rho, noise, spec.optimizer);
            row.c = s.classical.mean;
            row.c_std = s.classical.std;
            row.cprime = s.concurrence.mean;
            row.cprime_std = s.concurrence.std;
            row.q = s.discord.mean;
            row.q_std = s.discord.std;
            row.im = s.mutual_information.mean;
            row.converged = s.unconverged_runs == 0;
        } else {
            const CorrelationReport r = analyze(rho, spec.optimizer);
            row.c = r.classical_correlation;
            row.cprime = r.concurrence;
            row.q = r.discord;
            row.im = r.mutual_information;
            row.converged = r.converged;
        }
        rows.push_back(row);
    }
    return rows;
}

std::string csv_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", x == 0.0 ? 0.0 : x);
    return buf;
}

std::string sweep_csv(SweepVariable variable, const std::vector<SweepRow>& rows) {
    std::string out = std::string(variable_name(variable)) + ",C,C_std,Cprime,Cprime_std,Q,Q_std,Im\n";
    for (const SweepRow& r : rows) {
        for (double v : {r.value, r.c, r.c_std, r.cprime, r.cprime_std, r.q, r.q_std}) out += csv_number(v) + ",";
        out += csv_number(r.im) + "\n";
    }
    return out;
}

std::string sweep_gnuplot(const std::string& csv_path, SweepVariable variable) {
    const std::string f = "'" + csv_path + "'";
    return "# gnuplot script; run with: gnuplot <this file>\n"
           "set datafile separator ','\n"
           "set terminal pngcairo size 800,600\n"
           "set output " + std::string("'") + csv_path + ".png'\n"
           "set xlabel '" + variable_name(variable) + "'\n"
           "set ylabel 'bits'\n"
           "set key left top\n"
           "plot " + f + " using 1:2:3 skip 1 with yerrorlines title 'C', \\\n"
           "     " + f + " using 1:4:5 skip 1 with yerrorlines title \"C'\", \\\n"
           "     " + f + " using 1:6:7 skip 1 with yerrorlines title 'Q'\n";
}

std::vector<ScatterPoint> run_scatter(double step, const OptimizerConfig& optimizer) {
    if (!(step > 0.0 && step <= 0.1)) throw std::invalid_argument("scatter step must lie in (0, 0.1]");
    const std::vector<double> values = grid_values(0.0, 1.0, step);
    std::vector<ScatterPoint> points;
    points.reserve(2 * values.size() * values.size());
    for (Family family : {Family::Rank2, Family::Rank3}) {
        for (double a : values) {
            for (double eps : values) {
                StateParams params{0.5, 1.0, eps};
                if (family == Family::Rank2) {
                    params.p = a;
                } else {
                    params.m = a;
                }
                const DiscordResult d = quantum_discord(family_state(family, params), optimizer);
                points.push_back({family, params, d.classical.value, d.discord});
            }
        }
    }
    return points;
}

std::string scatter_csv(const std::vector<ScatterPoint>& points) {
    std::string out = "family,p,m,epsilon,C,Q\n";
    for (const ScatterPoint& pt : points) {
        out += std::string(family_name(pt.family)) + "," + csv_number(pt.params.p) + "," + csv_number(pt.params.m) +
               "," + csv_number(pt.params.epsilon) + "," + csv_number(pt.c) + "," + csv_number(pt.q) + "\n";
    }
    return out;
}

std::string scatter_gnuplot(const std::string& csv_path) {
    const std::string f = "'" + csv_path + "'";
    return "# gnuplot script; run with: gnuplot <this file>\n"
           "set datafile separator ','\n"
           "set terminal pngcairo size 800,600\n"
           "set output '" + csv_path + ".png'\n"
           "set xlabel 'C'\n"
           "set ylabel 'Q'\n"
           "set key left top\n"
           "plot " + f + " using 5:(strcol(1) eq 'rank2' ? $6 : 1/0) skip 1 with points pt 7 ps 0.3 lc 'gray' title 'rank-2', \\\n"
           "     " + f + " using 5:(strcol(1) eq 'rank3' ? $6 : 1/0) skip 1 with points pt 6 ps 0.5 lc 'black' title 'rank-3'\n";
}

}  // namespace somdms
