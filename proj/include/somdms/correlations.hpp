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

#ifndef SOMDMS_CORRELATIONS_HPP
#define SOMDMS_CORRELATIONS_HPP

#include <array>

#include "somdms/qmath.hpp"

namespace somdms {

/// Bloch angles of the measurement direction on the mode qubit:
///   |Psi>      = cos(theta/2)|0> + sin(theta/2) e^{i phi}|1>
///   |Psi_perp> = sin(theta/2)|0> - cos(theta/2) e^{i phi}|1>
struct MeasurementAngles {
    double theta = 0.0;  // [0, pi]
    double phi = 0.0;    // [0, 2 pi)
};

/// Maps any (theta, phi) onto the canonical ranges while keeping the same
/// pair of projectors.
MeasurementAngles normalized(MeasurementAngles angles);

/// The two measurement kets {|Psi>, |Psi_perp>}.
std::array<std::array<Complex, 2>, 2> measurement_basis(MeasurementAngles angles);

struct OptimizerConfig {
    int grid_theta = 64;
    int grid_phi = 64;
    bool refine = true;
    double simplex_tolerance = 1e-6;
    int max_evaluations = 500;
};

struct ClassicalCorrelation {
    double value = 0.0;  // bits
    MeasurementAngles angles;
    double grid_value = 0.0;  // before simplex refinement
    int evaluations = 0;      // simplex stage only
    bool converged = true;
};

struct CorrelationReport {
    double mutual_information = 0.0;
    double classical_correlation = 0.0;
    double discord = 0.0;
    double concurrence = 0.0;
    MeasurementAngles optimal_angles;
    bool converged = true;
};

/// S(rho_A) + S(rho_B) - S(rho).
double mutual_information(const DensityMatrix4& rho);

/// sum_k p_k S(rho_k) for the projective measurement of the mode qubit along
/// `angles`. Outcomes with p_k < 1e-12 contribute nothing.
double measured_conditional_entropy(const DensityMatrix4& rho, MeasurementAngles angles);

/// S(rho_A) - min over measurement directions of the conditional entropy.
/// Grid search followed by simplex refinement from the best grid node;
/// non-convergence is reported through the flag, never thrown.
ClassicalCorrelation classical_correlation(const DensityMatrix4& rho, const OptimizerConfig& config = {});

struct DiscordResult {
    double discord = 0.0;
    ClassicalCorrelation classical;
};

DiscordResult quantum_discord(const DensityMatrix4& rho, const OptimizerConfig& config = {});

/// Wootters concurrence, max(0, l1 - l2 - l3 - l4) with l_i the descending
/// square roots of the spectrum of rho (sy x sy) rho* (sy x sy). The l_i are
/// computed as singular values of sqrt(rho) sqrt(rho~).
double concurrence(const DensityMatrix4& rho);

/// Closed form for states supported on the diagonal and anti-diagonal.
/// Throws std::invalid_argument if any other entry exceeds 1e-10.
double xstate_concurrence(const DensityMatrix4& rho);

CorrelationReport analyze(const DensityMatrix4& rho, const OptimizerConfig& config = {});

}  // namespace somdms

#endif  // SOMDMS_CORRELATIONS_HPP
