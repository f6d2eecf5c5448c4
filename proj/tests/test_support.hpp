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

// Random generators and brute-force oracles shared by the test binaries.
// Nothing in here calls into the optimizer or the fast entropy paths of the
// library, so the oracles stay independent of what they check.

#ifndef SOMDMS_TESTS_TEST_SUPPORT_HPP
#define SOMDMS_TESTS_TEST_SUPPORT_HPP

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "somdms/qmath.hpp"

namespace somdms::testing {

inline Complex gaussian_complex(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    return {n(rng), n(rng)};
}

/// G G^dagger / tr with G of shape dim x rank.
inline ComplexMatrix random_density(std::mt19937_64& rng, std::size_t dim, std::size_t rank) {
    ComplexMatrix out(dim);
    for (std::size_t k = 0; k < rank; ++k) {
        std::vector<Complex> col(dim);
        for (auto& z : col) z = gaussian_complex(rng);
        out += ComplexMatrix::projector(col);
    }
    return out * Complex(1.0 / out.trace().real());
}

inline std::vector<Complex> random_ket(std::mt19937_64& rng, std::size_t dim) {
    std::vector<Complex> ket(dim);
    double norm2 = 0.0;
    for (auto& z : ket) {
        z = gaussian_complex(rng);
        norm2 += std::norm(z);
    }
    for (auto& z : ket) z /= std::sqrt(norm2);
    return ket;
}

/// Haar-ish SU(2) element times a random global phase.
inline ComplexMatrix random_unitary2(std::mt19937_64& rng) {
    const auto v = random_ket(rng, 2);
    std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
    const Complex g = std::polar(1.0, u(rng));
    return ComplexMatrix(2, {g * v[0], -g * std::conj(v[1]), g * v[1], g * std::conj(v[0])});
}

/// Random X-state of rank <= 3 with complex anti-diagonal coherences.
inline ComplexMatrix random_xstate(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
    // Block (0,3) and block (1,2), each a PSD 2x2, one of them forced rank-1.
    auto block = [&](bool rank_one) {
        const double a = u(rng);
        const double d = u(rng);
        double mag = std::sqrt(a * d);
        if (!rank_one) mag *= u(rng);
        return std::array<Complex, 3>{a, d, std::polar(mag, ph(rng))};
    };
    const bool outer_rank_one = u(rng) < 0.5;
    const auto outer = block(outer_rank_one);
    const auto inner = block(!outer_rank_one);
    ComplexMatrix m(4);
    m(0, 0) = outer[0];
    m(3, 3) = outer[1];
    m(0, 3) = outer[2];
    m(3, 0) = std::conj(outer[2]);
    m(1, 1) = inner[0];
    m(2, 2) = inner[1];
    m(1, 2) = inner[2];
    m(2, 1) = std::conj(inner[2]);
    return m * Complex(1.0 / m.trace().real());
}

/// Conditional entropy sum_k p_k S(rho_k) evaluated literally from
///   rho_k = (I x B_k) rho (I x B_k) / p_k,  p_k = Tr[rho (I x B_k)],
/// with the full 4x4 eigensolver for S(rho_k).
inline double literal_conditional_entropy(const ComplexMatrix& rho, double theta, double phi) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const Complex e = std::polar(1.0, phi);
    const std::vector<std::vector<Complex>> kets = {{c, s * e}, {s, -c * e}};
    double total = 0.0;
    for (const auto& k : kets) {
        const ComplexMatrix op = tensor_product(ComplexMatrix::identity(2), ComplexMatrix::projector(k));
        const double p = (rho * op).trace().real();
        if (p < 1e-12) continue;
        const ComplexMatrix post = op * rho * op * Complex(1.0 / p);
        double h = 0.0;
        for (double l : hermitian_eigenvalues(post)) {
            if (l > 1e-12) h -= l * std::log2(l);
        }
        total += p * h;
    }
    return total;
}

/// Same quantity through a 2x2 closed form, cheap enough for dense grids.
/// Written independently of the library's fast path.
inline double grid_conditional_entropy(const ComplexMatrix& rho, double theta, double phi) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const Complex e = std::polar(1.0, phi);
    const Complex kets[2][2] = {{c, s * e}, {s, -c * e}};
    double total = 0.0;
    for (const auto& k : kets) {
        Complex sigma[2][2];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                Complex sum = 0.0;
                for (int j = 0; j < 2; ++j)
                    for (int l = 0; l < 2; ++l) sum += std::conj(k[j]) * rho(2 * a + j, 2 * b + l) * k[l];
                sigma[a][b] = sum;
            }
        const double p = sigma[0][0].real() + sigma[1][1].real();
        if (p < 1e-12) continue;
        const double det = sigma[0][0].real() * sigma[1][1].real() - std::norm(sigma[0][1]);
        const double disc = std::sqrt(std::max(0.0, p * p / 4 - det));
        for (double l : {p / 2 + disc, p / 2 - disc}) {
            const double q = l / p;
            if (q > 1e-12) total -= l * std::log2(q);
        }
    }
    return total;
}

/// max over a dense (theta, phi) grid of S(rho_A) - conditional entropy.
inline double brute_force_classical_correlation(const ComplexMatrix& rho, int n_theta, int n_phi) {
    double best = 1e300;
    for (int i = 0; i < n_theta; ++i) {
        const double theta = std::numbers::pi * i / (n_theta - 1);
        for (int j = 0; j < n_phi; ++j) {
            best = std::min(best, grid_conditional_entropy(rho, theta, 2.0 * std::numbers::pi * j / n_phi));
        }
    }
    ComplexMatrix rho_a(2);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) rho_a(a, b) = rho(2 * a, 2 * b) + rho(2 * a + 1, 2 * b + 1);
    double entropy_a = 0.0;
    for (double l : hermitian_eigenvalues(rho_a)) {
        if (l > 1e-12) entropy_a -= l * std::log2(l);
    }
    return entropy_a - best;
}

}  // namespace somdms::testing

#endif  // SOMDMS_TESTS_TEST_SUPPORT_HPP
