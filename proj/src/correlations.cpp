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

#include "somdms/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "somdms/optimize.hpp"

namespace somdms {

namespace {

constexpr double kOutcomeFloor = 1e-12;
constexpr double kClampWindow = 1e-9;

using Ket2 = std::array<Complex, 2>;

/// Unnormalized conditional state of A after projecting B onto |b>:
/// (I x <b|) rho (I x |b>). Stored as {s00, s11, s01}.
struct Block2 {
    double s00;
    double s11;
    Complex s01;
};

Block2 conditional_block(const ComplexMatrix& rho, const Ket2& b) {
    auto entry = [&](std::size_t a, std::size_t a2) {
        Complex sum = 0.0;
        for (std::size_t j = 0; j < 2; ++j) {
            const Complex bj = std::conj(b[j]);
            for (std::size_t k = 0; k < 2; ++k) sum += bj * rho(2 * a + j, 2 * a2 + k) * b[k];
        }
        return sum;
    };
    return {entry(0, 0).real(), entry(1, 1).real(), entry(0, 1)};
}

/// p S(sigma / p) for a 2x2 unnormalized Hermitian block with trace p.
double weighted_entropy(const Block2& s) {
    const double p = s.s00 + s.s11;
    if (p < kOutcomeFloor) return 0.0;
    const double half_gap = 0.5 * (s.s00 - s.s11);
    const double radius = std::sqrt(half_gap * half_gap + std::norm(s.s01));
    double h = 0.0;
    for (double lambda : {0.5 * p + radius, 0.5 * p - radius}) {
        const double q = lambda / p;
        if (q > kEntropyEigenFloor) h -= lambda * std::log2(q);
    }
    return h;
}

double conditional_entropy_for(const ComplexMatrix& rho, const Block2& rho_a, const Ket2& psi) {
    const Block2 first = conditional_block(rho, psi);
    const Block2 second{rho_a.s00 - first.s00, rho_a.s11 - first.s11, rho_a.s01 - first.s01};
    return weighted_entropy(first) + weighted_entropy(second);
}

Ket2 psi_of(double theta, double phi) {
    return {Complex(std::cos(0.5 * theta)), std::sin(0.5 * theta) * std::polar(1.0, phi)};
}

Block2 reduced_a(const ComplexMatrix& rho) {
    return {(rho(0, 0) + rho(1, 1)).real(), (rho(2, 2) + rho(3, 3)).real(), rho(0, 2) + rho(1, 3)};
}

ComplexMatrix spin_flip(const ComplexMatrix& m) {
    // (sy x sy) m (sy x sy) with sy x sy = antidiag(-1, 1, 1, -1).
    static const std::array<double, 4> sign = {-1.0, 1.0, 1.0, -1.0};
    ComplexMatrix out(4);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) out(r, c) = sign[r] * sign[c] * m(3 - r, 3 - c);
    }
    return out;
}

double clamp_small_negative(double v) { return (v < 0.0 && v > -kClampWindow) ? 0.0 : v; }

}  // namespace

MeasurementAngles normalized(MeasurementAngles angles) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double theta = std::fmod(angles.theta, two_pi);
    double phi = angles.phi;
    if (theta < 0.0) theta += two_pi;
    if (theta > std::numbers::pi) {
        // |Psi(2pi - t, f)> = -|Psi(t, f + pi)>: same projector pair.
        theta = two_pi - theta;
        phi += std::numbers::pi;
    }
    phi = std::fmod(phi, two_pi);
    if (phi < 0.0) phi += two_pi;
    if (phi >= two_pi) phi = 0.0;
    return {theta, phi};
}

std::array<std::array<Complex, 2>, 2> measurement_basis(MeasurementAngles angles) {
    const double c = std::cos(0.5 * angles.theta);
    const double s = std::sin(0.5 * angles.theta);
    const Complex phase = std::polar(1.0, angles.phi);
    return {{{Complex(c), s * phase}, {Complex(s), -c * phase}}};
}

double mutual_information(const DensityMatrix4& rho) {
    const double value = von_neumann_entropy(partial_trace(rho, Subsystem::A)) +
                         von_neumann_entropy(partial_trace(rho, Subsystem::B)) - von_neumann_entropy(rho);
    return clamp_small_negative(value);
}

double measured_conditional_entropy(const DensityMatrix4& rho, MeasurementAngles angles) {
    const auto basis = measurement_basis(angles);
    return weighted_entropy(conditional_block(rho.matrix(), basis[0])) +
           weighted_entropy(conditional_block(rho.matrix(), basis[1]));
}

ClassicalCorrelation classical_correlation(const DensityMatrix4& rho, const OptimizerConfig& config) {
    if (config.grid_theta < 2 || config.grid_phi < 1) {
        throw std::invalid_argument("classical_correlation: grid needs at least 2 theta and 1 phi nodes");
    }
    const ComplexMatrix& m = rho.matrix();
    const Block2 rho_a = reduced_a(m);
    const double entropy_a = von_neumann_entropy(partial_trace(rho, Subsystem::A));

    const double d_theta = std::numbers::pi / (config.grid_theta - 1);
    const double d_phi = 2.0 * std::numbers::pi / config.grid_phi;
    std::vector<Complex> phases(config.grid_phi);
    for (int j = 0; j < config.grid_phi; ++j) phases[j] = std::polar(1.0, j * d_phi);

    double best = std::numeric_limits<double>::infinity();
    Point2 best_point{0.0, 0.0};
    for (int i = 0; i < config.grid_theta; ++i) {
        const double theta = i * d_theta;
        const double c = std::cos(0.5 * theta);
        const double s = std::sin(0.5 * theta);
        for (int j = 0; j < config.grid_phi; ++j) {
            const double h = conditional_entropy_for(m, rho_a, Ket2{Complex(c), s * phases[j]});
            if (h < best) {
                best = h;
                best_point = {theta, j * d_phi};
            }
        }
    }

    ClassicalCorrelation out;
    out.grid_value = clamp_small_negative(entropy_a - best);
    double minimum = best;
    if (config.refine) {
        const auto objective = [&](const Point2& x) { return conditional_entropy_for(m, rho_a, psi_of(x[0], x[1])); };
        const SimplexResult refined =
            nelder_mead_2d(objective, best_point, {d_theta, d_phi},
                           {.diameter_tolerance = config.simplex_tolerance, .max_evaluations = config.max_evaluations});
        out.evaluations = refined.evaluations;
        out.converged = refined.converged;
        if (refined.value <= minimum) {
            minimum = refined.value;
            best_point = refined.best;
        }
    }
    out.value = clamp_small_negative(entropy_a - minimum);
    out.angles = normalized({best_point[0], best_point[1]});
    return out;
}

DiscordResult quantum_discord(const DensityMatrix4& rho, const OptimizerConfig& config) {
    DiscordResult out;
    out.classical = classical_correlation(rho, config);
    out.discord = clamp_small_negative(mutual_information(rho) - out.classical.value);
    return out;
}

double concurrence(const DensityMatrix4& rho) {
    const ComplexMatrix root = psd_sqrt(rho.matrix());
    const ComplexMatrix flipped_root = spin_flip(root.conjugate());
    const std::vector<double> lambda = singular_values(root * flipped_root);
    const double c = lambda[0] - lambda[1] - lambda[2] - lambda[3];
    // separable states land a few ulps either side of zero
    return c > 1e-12 ? c : 0.0;
}

double xstate_concurrence(const DensityMatrix4& rho) {
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) {
            if (r == c || r + c == 3) continue;
            if (std::abs(rho(r, c)) > 1e-10) {
                throw std::invalid_argument("xstate_concurrence: entry (" + std::to_string(r) + "," + std::to_string(c) +
                                            ") lies off the X pattern");
            }
        }
    }
    auto diag = [&](std::size_t i) { return std::max(0.0, rho(i, i).real()); };
    const double outer = std::abs(rho(0, 3)) - std::sqrt(diag(1) * diag(2));
    const double inner = std::abs(rho(1, 2)) - std::sqrt(diag(0) * diag(3));
    return 2.0 * std::max({0.0, outer, inner});
}

CorrelationReport analyze(const DensityMatrix4& rho, const OptimizerConfig& config) {
    const DiscordResult d = quantum_discord(rho, config);
    CorrelationReport report;
    report.mutual_information = mutual_information(rho);
    report.classical_correlation = d.classical.value;
    report.discord = d.discord;
    report.concurrence = concurrence(rho);
    report.optimal_angles = d.classical.angles;
    report.converged = d.classical.converged;
    return report;
}

}  // namespace somdms
