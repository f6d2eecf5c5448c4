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

// Data behind the correlation curves and the discord / classical-correlation
// scatter: parameter sweeps over the state families, and their CSV and
// gnuplot renderings.

#ifndef SOMDMS_FIGURES_HPP
#define SOMDMS_FIGURES_HPP

#include <optional>
#include <string>
#include <vector>

#include "somdms/correlations.hpp"
#include "somdms/states.hpp"
#include "somdms/tomography.hpp"

namespace somdms {

enum class Family { Rank2, Rank3, Mdms };

const char* family_name(Family f);
/// Throws std::invalid_argument for an unknown name.
Family parse_family(const std::string& name);

/// rank2 reads p and epsilon, rank3 reads m and epsilon, mdms reads all three.
DensityMatrix4 family_state(Family f, const StateParams& params);

enum class SweepVariable { Epsilon, P, M };

const char* variable_name(SweepVariable v);
SweepVariable parse_variable(const std::string& name);

/// from, from + step, ... up to `to` inclusive (within 1e-9 of a step).
std::vector<double> grid_values(double from, double to, double step);

struct SweepSpec {
    Family family = Family::Rank2;
    StateParams fixed;
    SweepVariable variable = SweepVariable::Epsilon;
    double from = 0.0;
    double to = 1.0;
    double step = 0.05;
    std::optional<NoiseConfig> noise;  // per-point seed is noise->seed + index
    OptimizerConfig optimizer;
};

struct SweepRow {
    double value = 0.0;
    double c = 0.0;
    double c_std = 0.0;
    double cprime = 0.0;
    double cprime_std = 0.0;
    double q = 0.0;
    double q_std = 0.0;
    double im = 0.0;
    bool converged = true;
};

/// Throws std::invalid_argument on a bad spec. With noise the value columns
/// are Monte Carlo means.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);
std::string sweep_csv(SweepVariable variable, const std::vector<SweepRow>& rows);
std::string sweep_gnuplot(const std::string& csv_path, SweepVariable variable);

struct ScatterPoint {
    Family family;
    StateParams params;
    double c = 0.0;
    double q = 0.0;
};

/// rank2(p, eps) and rank3(m, eps) on a square grid of the given step.
std::vector<ScatterPoint> run_scatter(double step, const OptimizerConfig& optimizer = {});
std::string scatter_csv(const std::vector<ScatterPoint>& points);
std::string scatter_gnuplot(const std::string& csv_path);

/// Fixed-precision number formatting used by all CSV output.
std::string csv_number(double x);

}  // namespace somdms

#endif  // SOMDMS_FIGURES_HPP
