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

// Two-qubit linear-inversion tomography over polarization and transverse
// mode, plus a Monte Carlo model of imperfect analysis optics.

#ifndef SOMDMS_TOMOGRAPHY_HPP
#define SOMDMS_TOMOGRAPHY_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "somdms/correlations.hpp"
#include "somdms/qmath.hpp"

namespace somdms {

/// Single-qubit analysis outcome: +/- eigenstate of Z, or + of X or Y.
enum class Setting { Zp, Zm, Xp, Yp };

const char* setting_name(Setting s);

struct ProjectorSet {
    std::array<Setting, 4> settings{Setting::Zp, Setting::Zm, Setting::Xp, Setting::Yp};

    /// Rank-1 projector for pair index i = 4 * (polarization setting) + (mode setting).
    ComplexMatrix projector(std::size_t i) const;
};

using Probabilities16 = std::array<double, 16>;

class ConfigurationError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

Probabilities16 projection_probabilities(const DensityMatrix4& rho, const ProjectorSet& set = {});

/// Unconstrained inverse: (1/4) sum r_jk sigma_j (x) sigma_k. Affine in `probs`
/// and generally not PSD. Throws ConfigurationError for a singular set.
ComplexMatrix linear_inversion(const Probabilities16& probs, const ProjectorSet& set = {});

/// Clips negative eigenvalues and renormalizes the trace.
DensityMatrix4 project_psd(const ComplexMatrix& m);

DensityMatrix4 reconstruct(const Probabilities16& probs, const ProjectorSet& set = {});

struct NoiseConfig {
    double hwp_jitter = 0.0;  // degrees, half-range of a uniform error
    double bs_r = 0.5;        // intensity reflectance
    double bs_t = 0.5;        // intensity transmittance
    int runs = 100;
    std::uint64_t seed = 0;
};

void validate(const NoiseConfig& noise);

/// Probabilities the noisy analysis optics would report for `set`.
Probabilities16 noisy_probabilities(const DensityMatrix4& rho, const NoiseConfig& noise, std::uint64_t run_index,
                                    const ProjectorSet& set = {});

/// One noisy tomography pass. Deterministic in (noise.seed, run_index).
DensityMatrix4 perturb_and_measure(const DensityMatrix4& rho, const NoiseConfig& noise, std::uint64_t run_index,
                                   const ProjectorSet& set = {});

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2.
double fidelity(const DensityMatrix4& rho, const DensityMatrix4& sigma);

struct MeasureStats {
    double mean = 0.0;
    double std = 0.0;  // sample standard deviation
    std::vector<double> values;
};

MeasureStats summarize(std::vector<double> values);

struct CorrelationStats {
    MeasureStats classical;
    MeasureStats concurrence;
    MeasureStats discord;
    MeasureStats mutual_information;
    MeasureStats fidelity;
    int unconverged_runs = 0;
};

CorrelationStats monte_carlo_correlations(const DensityMatrix4& rho, const NoiseConfig& noise,
                                          const OptimizerConfig& optimizer = {});

}  // namespace somdms

#endif  // SOMDMS_TOMOGRAPHY_HPP
