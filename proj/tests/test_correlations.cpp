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

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "somdms/optimize.hpp"
#include "somdms/states.hpp"
#include "test_support.hpp"

using namespace somdms;

namespace {

DensityMatrix4 bell() { return rank2(0.5, 1.0); }

DensityMatrix4 product_hv() { return DensityMatrix4(ComplexMatrix::diagonal({0, 1, 0, 0})); }

/// |<psi*| sy x sy |psi>| = 2 |a_00 a_11 - a_01 a_10| for a pure state.
double pure_concurrence(std::span<const Complex> ket) { return 2.0 * std::abs(ket[0] * ket[3] - ket[1] * ket[2]); }

DensityMatrix4 rotate_locally(const DensityMatrix4& rho, const ComplexMatrix& ua, const ComplexMatrix& ub) {
    const ComplexMatrix u = tensor_product(ua, ub);
    ComplexMatrix out = u * rho.matrix() * u.adjoint();
    // Re-symmetrize rounding so the strict 1e-12 Hermitian check passes.
    out = (out + out.adjoint()) * Complex(0.5);
    return DensityMatrix4(out);
}

}  // namespace

TEST_CASE("mutual_information examples") {
    CHECK(std::abs(mutual_information(bell()) - 2.0) < 1e-12);
    CHECK(std::abs(mutual_information(product_hv())) < 1e-12);
    CHECK(std::abs(mutual_information(rank2(0.5, 0.5)) - 0.6225562489182657) < 1e-12);
}

TEST_CASE("measured_conditional_entropy examples") {
    CHECK(std::abs(measured_conditional_entropy(DensityMatrix4::maximally_mixed(), {0.7, 2.1}) - 1.0) < 1e-12);
    CHECK(std::abs(measured_conditional_entropy(bell(), {0.0, 0.0})) < 1e-12);
    // rank3(1/2, 1/2) is diag(1/4,...) with rho_03 = 1/4; a Z measurement on
    // the mode leaves diag(1/4, 1/4) on A for either outcome: 1 bit.
    CHECK(std::abs(measured_conditional_entropy(rank3(0.5, 0.5), {0.0, 0.0}) - 1.0) < 1e-12);
    CHECK(std::abs(testing::literal_conditional_entropy(rank3(0.5, 0.5).matrix(), 0.0, 0.0) - 1.0) < 1e-12);
}

TEST_CASE("measured_conditional_entropy agrees with the literal post-measurement construction") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> theta(0.0, std::numbers::pi);
    std::uniform_real_distribution<double> phi(0.0, 2.0 * std::numbers::pi);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix4 rho(testing::random_density(rng, 4, 1 + trial % 4));
        const MeasurementAngles a{theta(rng), phi(rng)};
        CHECK(std::abs(measured_conditional_entropy(rho, a) -
                       testing::literal_conditional_entropy(rho.matrix(), a.theta, a.phi)) < 1e-10);
    }
}

TEST_CASE("measurement basis is orthonormal and normalized angles keep the projectors") {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> wide(-20.0, 20.0);
    for (int trial = 0; trial < 100; ++trial) {
        const MeasurementAngles raw{wide(rng), wide(rng)};
        const MeasurementAngles n = normalized(raw);
        CHECK(n.theta >= 0.0);
        CHECK(n.theta <= std::numbers::pi);
        CHECK(n.phi >= 0.0);
        CHECK(n.phi < 2.0 * std::numbers::pi);
        const auto b = measurement_basis(raw);
        const auto c = measurement_basis(n);
        CHECK(std::abs(std::conj(b[0][0]) * b[1][0] + std::conj(b[0][1]) * b[1][1]) < 1e-14);
        CHECK(max_abs_diff(ComplexMatrix::projector(b[0]), ComplexMatrix::projector(c[0])) < 1e-12);
    }
}

TEST_CASE("classical_correlation examples") {
    const ClassicalCorrelation c_bell = classical_correlation(bell());
    CHECK(std::abs(c_bell.value - 1.0) < 1e-9);
    CHECK(std::abs(testing::brute_force_classical_correlation(bell().matrix(), 101, 100) - 1.0) < 1e-9);
    CHECK(c_bell.converged);

    CHECK(std::abs(classical_correlation(product_hv()).value) < 1e-12);

    // Along the rank-3 (m = 1/2) eps sweep C bottoms out at eps = 1/3.
    double best_eps = -1.0;
    double best_c = 1e9;
    for (int i = 0; i <= 100; ++i) {
        const double eps = i / 100.0;
        const double c = classical_correlation(rank3(0.5, eps)).value;
        if (c < best_c) {
            best_c = c;
            best_eps = eps;
        }
    }
    CHECK(std::abs(best_eps - 1.0 / 3.0) < 0.011);
}

TEST_CASE("refinement never regresses and matches a dense grid") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix4 rho(testing::random_xstate(rng));
        const ClassicalCorrelation c = classical_correlation(rho);
        CHECK(c.value >= c.grid_value);
        const double oracle = testing::brute_force_classical_correlation(rho.matrix(), 301, 300);
        CHECK(std::abs(c.value - oracle) < 1e-3);
        CHECK(c.value >= oracle - 1e-12);
    }
}

TEST_CASE("optimizer reports non-convergence instead of throwing") {
    std::mt19937_64 rng(43);
    const DensityMatrix4 rho(testing::random_density(rng, 4, 3));
    OptimizerConfig config;
    config.max_evaluations = 4;
    const ClassicalCorrelation c = classical_correlation(rho, config);
    CHECK_FALSE(c.converged);
    CHECK(c.value >= c.grid_value);

    config.refine = false;
    const ClassicalCorrelation grid_only = classical_correlation(rho, config);
    CHECK(grid_only.value == grid_only.grid_value);
}

TEST_CASE("nelder_mead_2d finds a quadratic bowl") {
    const auto bowl = [](const Point2& x) { return (x[0] - 0.3) * (x[0] - 0.3) + 2.0 * (x[1] + 1.1) * (x[1] + 1.1); };
    const SimplexResult r = nelder_mead_2d(bowl, {0.0, 0.0}, {0.1, 0.1});
    CHECK(r.converged);
    CHECK(std::abs(r.best[0] - 0.3) < 1e-5);
    CHECK(std::abs(r.best[1] + 1.1) < 1e-5);
    CHECK(r.value <= bowl({0.0, 0.0}));
}

TEST_CASE("quantum_discord examples") {
    const DiscordResult d = quantum_discord(bell());
    CHECK(std::abs(d.discord - 1.0) < 1e-9);
    CHECK(std::abs(quantum_discord(product_hv()).discord) < 1e-12);

    std::mt19937_64 rng(47);
    const auto a = testing::random_ket(rng, 2);
    const auto b = testing::random_ket(rng, 2);
    const DensityMatrix4 product(tensor_product(ComplexMatrix::projector(a), ComplexMatrix::projector(b)));
    CHECK(std::abs(quantum_discord(product).discord) < 1e-9);

    const DensityMatrix4 r3 = rank3(0.5, 0.3);
    CHECK(quantum_discord(r3).discord > 0.01);
    CHECK(concurrence(r3) < 1e-9);
}

TEST_CASE("concurrence examples") {
    CHECK(std::abs(concurrence(bell()) - 1.0) < 1e-12);
    for (double p : {0.0, 0.1, 0.25, 0.5, 0.9}) {
        const auto ket = partial_bell(p);
        const double expected = pure_concurrence(ket);
        CHECK(std::abs(expected - 2.0 * std::sqrt(p * (1 - p))) < 1e-15);
        CHECK(std::abs(concurrence(DensityMatrix4::pure(ket)) - expected) < 1e-9);
    }
    for (int i = 0; i <= 10; ++i) {
        const double eps = i / 10.0;
        CHECK(std::abs(concurrence(rank2(0.5, eps)) - eps) < 1e-9);
        CHECK(std::abs(xstate_concurrence(rank2(0.5, eps)) - eps) < 1e-12);
    }
}

TEST_CASE("concurrence of random pure states") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 100; ++trial) {
        const auto ket = testing::random_ket(rng, 4);
        CHECK(std::abs(concurrence(DensityMatrix4::pure(ket)) - pure_concurrence(ket)) < 1e-7);
    }
}

TEST_CASE("xstate_concurrence examples") {
    CHECK(std::abs(xstate_concurrence(rank3(0.5, 0.4))) < 1e-15);
    CHECK(std::abs(xstate_concurrence(rank3(0.5, 0.8)) - 0.6) < 1e-12);
    CHECK(xstate_concurrence(DensityMatrix4(ComplexMatrix::diagonal({1, 0, 0, 0}))) == 0.0);

    ComplexMatrix m = ComplexMatrix::identity(4) * Complex(0.25);
    m(0, 1) = 0.1;
    m(1, 0) = 0.1;
    CHECK_THROWS_AS(xstate_concurrence(DensityMatrix4(m)), std::invalid_argument);
}

TEST_CASE("concurrence matches the X-state form on every family member") {
    for (int i = 0; i <= 20; ++i) {
        for (int j = 0; j <= 20; ++j) {
            const double a = i / 20.0;
            const double eps = j / 20.0;
            for (const DensityMatrix4& rho : {rank2(a, eps), rank3(a, eps), mdms({a, 1.0 - a, eps})}) {
                CHECK(std::abs(concurrence(rho) - xstate_concurrence(rho)) < 1e-9);
            }
        }
    }
}

TEST_CASE("correlation ordering on random states") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 40; ++trial) {
        const DensityMatrix4 rho(testing::random_density(rng, 4, 1 + trial % 4));
        const CorrelationReport r = analyze(rho);
        CHECK(r.classical_correlation >= -1e-9);
        CHECK(r.classical_correlation <= r.mutual_information + 1e-9);
        CHECK(r.discord >= -1e-9);
        CHECK(std::abs(r.discord - (r.mutual_information - r.classical_correlation)) < 1e-9);
        CHECK(r.concurrence >= 0.0);
        CHECK(r.concurrence <= 1.0 + 1e-9);
    }
}

TEST_CASE("rank-2 correlations grow with eps") {
    CorrelationReport previous = analyze(rank2(0.5, 0.0));
    for (int i = 1; i <= 20; ++i) {
        const CorrelationReport r = analyze(rank2(0.5, i * 0.05));
        CHECK(r.classical_correlation >= previous.classical_correlation - 1e-9);
        CHECK(r.concurrence >= previous.concurrence - 1e-9);
        CHECK(r.discord >= previous.discord - 1e-9);
        previous = r;
    }
}

TEST_CASE("local unitaries leave the report unchanged") {
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const DensityMatrix4 rho = trial % 2 == 0 ? DensityMatrix4(testing::random_xstate(rng))
                                                  : mdms({u(rng), u(rng), u(rng)});
        const DensityMatrix4 moved = rotate_locally(rho, testing::random_unitary2(rng), testing::random_unitary2(rng));
        const CorrelationReport a = analyze(rho);
        const CorrelationReport b = analyze(moved);
        CHECK(std::abs(a.mutual_information - b.mutual_information) < 1e-6);
        CHECK(std::abs(a.concurrence - b.concurrence) < 1e-6);
        CHECK(std::abs(a.discord - b.discord) < 1e-6);
    }
}
