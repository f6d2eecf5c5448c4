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

#include "somdms/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "somdms/optics.hpp"

namespace somdms {

namespace {

using Matrix4 = std::array<std::array<double, 4>, 4>;

enum class Basis { Z = 0, X = 1, Y = 2 };

Basis basis_of(Setting s) {
    switch (s) {
        case Setting::Zp:
        case Setting::Zm:
            return Basis::Z;
        case Setting::Xp:
            return Basis::X;
        case Setting::Yp:
            return Basis::Y;
    }
    return Basis::Z;
}

// Outcome index of the analyzer: 0 = transmitted (+), 1 = reflected (-).
std::size_t outcome_of(Setting s) { return s == Setting::Zm ? 1 : 0; }

std::array<double, 3> bloch(Setting s) {
    switch (s) {
        case Setting::Zp:
            return {0, 0, 1};
        case Setting::Zm:
            return {0, 0, -1};
        case Setting::Xp:
            return {1, 0, 0};
        case Setting::Yp:
            return {0, 1, 0};
    }
    return {0, 0, 0};
}

ComplexMatrix single_projector(Setting s) {
    const auto b = bloch(s);
    return (pauli::I() + pauli::X() * Complex(b[0]) + pauli::Y() * Complex(b[1]) + pauli::Z() * Complex(b[2])) *
           Complex(0.5);
}

// Rows [1, bx, by, bz].
Matrix4 design_matrix(const ProjectorSet& set) {
    Matrix4 m{};
    for (std::size_t a = 0; a < 4; ++a) {
        const auto b = bloch(set.settings[a]);
        m[a] = {1.0, b[0], b[1], b[2]};
    }
    return m;
}

Matrix4 invert(Matrix4 m) {
    Matrix4 inv{};
    for (std::size_t i = 0; i < 4; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < 4; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        if (std::abs(m[pivot][col]) < 1e-12) throw ConfigurationError("projector set is not informationally complete");
        std::swap(m[col], m[pivot]);
        std::swap(inv[col], inv[pivot]);
        const double d = m[col][col];
        for (std::size_t c = 0; c < 4; ++c) {
            m[col][c] /= d;
            inv[col][c] /= d;
        }
        for (std::size_t r = 0; r < 4; ++r) {
            if (r == col) continue;
            const double f = m[r][col];
            for (std::size_t c = 0; c < 4; ++c) {
                m[r][c] -= f * m[col][c];
                inv[r][c] -= f * inv[col][c];
            }
        }
    }
    return inv;
}

std::array<ComplexMatrix, 4> paulis() { return {pauli::I(), pauli::X(), pauli::Y(), pauli::Z()}; }

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

ComplexMatrix quarter_wave_plate_matrix(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex i{0.0, 1.0};
    const Complex off = (1.0 - i) * s * c;
    return ComplexMatrix(2, {c * c + i * s * s, off, off, s * s + i * c * c}) * std::polar(1.0, -M_PI / 4);
}

// Nominal (QWP, HWP) angles in degrees that send the + state of each basis
// to the transmitted port.
constexpr std::array<std::array<double, 2>, 3> kPlateAngles = {{{0.0, 0.0}, {45.0, 22.5}, {45.0, 0.0}}};

// Only the half-wave plate (or its Dove-prism analog) carries angle error;
// the quarter-wave stage is taken as exact.
ComplexMatrix analyzer(Basis b, double hwp_error) {
    constexpr double kDeg = M_PI / 180.0;
    const auto& a = kPlateAngles[static_cast<std::size_t>(b)];
    return half_wave_plate_matrix((a[1] + hwp_error) * kDeg) * quarter_wave_plate_matrix(a[0] * kDeg);
}

}  // namespace

const char* setting_name(Setting s) {
    switch (s) {
        case Setting::Zp:
            return "Z+";
        case Setting::Zm:
            return "Z-";
        case Setting::Xp:
            return "X+";
        case Setting::Yp:
            return "Y+";
    }
    return "?";
}

ComplexMatrix ProjectorSet::projector(std::size_t i) const {
    if (i >= 16) throw std::out_of_range("projector index");
    return tensor_product(single_projector(settings[i / 4]), single_projector(settings[i % 4]));
}

Probabilities16 projection_probabilities(const DensityMatrix4& rho, const ProjectorSet& set) {
    Probabilities16 p{};
    for (std::size_t i = 0; i < 16; ++i) p[i] = (rho.matrix() * set.projector(i)).trace().real();
    return p;
}

ComplexMatrix linear_inversion(const Probabilities16& probs, const ProjectorSet& set) {
    const Matrix4 inv = invert(design_matrix(set));
    // r = 4 M^-1 P M^-T
    Matrix4 r{};
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t k = 0; k < 4; ++k) {
            double acc = 0.0;
            for (std::size_t a = 0; a < 4; ++a) {
                for (std::size_t b = 0; b < 4; ++b) acc += inv[j][a] * probs[4 * a + b] * inv[k][b];
            }
            r[j][k] = 4.0 * acc;
        }
    }
    const auto s = paulis();
    ComplexMatrix rho(4);
    for (std::size_t j = 0; j < 4; ++j) {
        for (std::size_t k = 0; k < 4; ++k) rho = rho + tensor_product(s[j], s[k]) * Complex(0.25 * r[j][k]);
    }
    return rho;
}

DensityMatrix4 project_psd(const ComplexMatrix& m) {
    const ComplexMatrix h = (m + m.adjoint()) * Complex(0.5);
    const EigenSystem es = hermitian_eigensystem(h);
    double total = 0.0;
    for (double v : es.values) total += std::max(v, 0.0);
    if (!(total > 0.0)) throw std::invalid_argument("matrix has no positive spectrum to project");
    ComplexMatrix out(4);
    for (std::size_t i = 0; i < 4; ++i) {
        const double w = std::max(es.values[i], 0.0) / total;
        if (w == 0.0) continue;
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) out(r, c) += w * es.vectors(r, i) * std::conj(es.vectors(c, i));
        }
    }
    return DensityMatrix4((out + out.adjoint()) * Complex(0.5));
}

DensityMatrix4 reconstruct(const Probabilities16& probs, const ProjectorSet& set) {
    return project_psd(linear_inversion(probs, set));
}

void validate(const NoiseConfig& noise) {
    if (!(noise.hwp_jitter >= 0.0)) throw std::invalid_argument("hwp_jitter must be non-negative");
    if (!(noise.bs_r > 0.0 && noise.bs_t > 0.0 && noise.bs_r + noise.bs_t <= 1.0 + 1e-12)) {
        throw std::invalid_argument("beam splitter needs bs_r, bs_t > 0 and bs_r + bs_t <= 1");
    }
    if (noise.runs < 1) throw std::invalid_argument("runs must be positive");
}

Probabilities16 noisy_probabilities(const DensityMatrix4& rho, const NoiseConfig& noise, std::uint64_t run_index,
                                    const ProjectorSet& set) {
    validate(noise);
    std::mt19937_64 rng(splitmix64(noise.seed ^ splitmix64(run_index)));
    std::uniform_real_distribution<double> jitter(-noise.hwp_jitter, noise.hwp_jitter);

    // Outcome distributions for all nine basis pairs; two plate errors each,
    // drawn in a fixed order so a run does not depend on `set`.
    std::array<std::array<std::array<double, 4>, 3>, 3> outcomes{};
    const std::array<double, 2> arm{noise.bs_t, noise.bs_r};
    for (std::size_t ba = 0; ba < 3; ++ba) {
        for (std::size_t bb = 0; bb < 3; ++bb) {
            const double ha = jitter(rng);
            const double hb = jitter(rng);
            const ComplexMatrix u =
                tensor_product(analyzer(static_cast<Basis>(ba), ha), analyzer(static_cast<Basis>(bb), hb));
            const ComplexMatrix out = u * rho.matrix() * u.adjoint();
            double total = 0.0;
            for (std::size_t k = 0; k < 4; ++k) {
                outcomes[ba][bb][k] = std::max(out(k, k).real(), 0.0) * arm[k / 2] * arm[k % 2];
                total += outcomes[ba][bb][k];
            }
            for (double& v : outcomes[ba][bb]) v = total > 0.0 ? v / total : 0.25;
        }
    }

    Probabilities16 p{};
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = 0; b < 4; ++b) {
            const Setting sa = set.settings[a];
            const Setting sb = set.settings[b];
            const auto ba = static_cast<std::size_t>(basis_of(sa));
            const auto bb = static_cast<std::size_t>(basis_of(sb));
            p[4 * a + b] = outcomes[ba][bb][2 * outcome_of(sa) + outcome_of(sb)];
        }
    }
    return p;
}

DensityMatrix4 perturb_and_measure(const DensityMatrix4& rho, const NoiseConfig& noise, std::uint64_t run_index,
                                   const ProjectorSet& set) {
    return reconstruct(noisy_probabilities(rho, noise, run_index, set), set);
}

double fidelity(const DensityMatrix4& rho, const DensityMatrix4& sigma) {
    const auto sv = singular_values(psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix()));
    const double f = std::accumulate(sv.begin(), sv.end(), 0.0);
    return std::min(f * f, 1.0);
}

MeasureStats summarize(std::vector<double> values) {
    MeasureStats s;
    const double n = static_cast<double>(values.size());
    if (!values.empty()) s.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    if (values.size() >= 2) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.std = std::sqrt(ss / (n - 1.0));
    }
    s.values = std::move(values);
    return s;
}

CorrelationStats monte_carlo_correlations(const DensityMatrix4& rho, const NoiseConfig& noise,
                                          const OptimizerConfig& optimizer) {
    validate(noise);
    if (noise.runs < 2) throw std::invalid_argument("Monte Carlo needs at least two runs");
    std::vector<double> c, cp, q, im, f;
    CorrelationStats stats;
    for (int run = 0; run < noise.runs; ++run) {
        const DensityMatrix4 measured = perturb_and_measure(rho, noise, static_cast<std::uint64_t>(run));
        const CorrelationReport r = analyze(measured, optimizer);
        c.push_back(r.classical_correlation);
        cp.push_back(r.concurrence);
        q.push_back(r.discord);
        im.push_back(r.mutual_information);
        f.push_back(fidelity(measured, rho));
        if (!r.converged) ++stats.unconverged_runs;
    }
    stats.classical = summarize(std::move(c));
    stats.concurrence = summarize(std::move(cp));
    stats.discord = summarize(std::move(q));
    stats.mutual_information = summarize(std::move(im));
    stats.fidelity = summarize(std::move(f));
    return stats;
}

}  // namespace somdms
