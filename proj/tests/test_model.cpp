// Copyright 2026 The dmtele Authors
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

#include "dmtele/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "test_util.hpp"

using namespace dmtele;
using std::numbers::pi;

namespace {

ComplexMatrix4 singlet_projector() { return projector(bell_state(BellState::PsiMinus)); }

}  // namespace

TEST(build_hamiltonian, zero_couplings) {
    EXPECT_EQ(build_hamiltonian({0.0, 0.0, 1.0}), ComplexMatrix4::zero());
}

TEST(build_hamiltonian, pure_heisenberg) {
    const ComplexMatrix4 h = build_hamiltonian({1.0, 0.0, 1.0});
    EXPECT_EQ(h(1, 2), Complex(2.0));
    EXPECT_EQ(h(2, 1), Complex(2.0));
    EXPECT_EQ(h(0, 0), Complex(1.0));
    EXPECT_EQ(h(1, 1), Complex(-1.0));
    EXPECT_EQ(h(2, 2), Complex(-1.0));
    EXPECT_EQ(h(3, 3), Complex(1.0));
    EXPECT_EQ(h(0, 1), Complex(0.0));
}

TEST(build_hamiltonian, equals_pauli_expansion) {
    // J (XX + YY + ZZ) + Dx (Y (x) Z - Z (x) Y)
    const ChannelParams p{0.7, -1.3, 1.0};
    const ComplexMatrix4 expected = p.j * (pauli_pair(1, 1) + pauli_pair(2, 2) + pauli_pair(3, 3)) +
                                    p.dx * (pauli_pair(2, 3) - pauli_pair(3, 2));
    EXPECT_LT(max_abs_diff(build_hamiltonian(p), expected), 1e-15);
}

TEST(build_hamiltonian, oracle_eigenvalues) {
    const auto r = hermitian_eig(build_hamiltonian({1.0, 1.0, 1.0}));
    EXPECT_NEAR(r.eigenvalues[0], -1.0 - 2.0 * std::sqrt(2.0), 1e-13);
    EXPECT_NEAR(r.eigenvalues[1], 1.0, 1e-13);
    EXPECT_NEAR(r.eigenvalues[2], 1.0, 1e-13);
    EXPECT_NEAR(r.eigenvalues[3], -1.0 + 2.0 * std::sqrt(2.0), 1e-13);
}

TEST(eigensystem, antiferromagnet_without_dm) {
    const ChannelParams p{1.0, 0.0, 1.0};
    const Spectrum s = eigensystem(p);
    EXPECT_EQ(s.energies, (std::array<double, 4>{1.0, 1.0, 1.0, -3.0}));
    EXPECT_EQ(s.theta1, pi / 2);
    EXPECT_EQ(s.theta2, 0.0);
    const auto phi = eigenvectors(s);
    const ComplexMatrix4 h = build_hamiltonian(p);
    for (std::size_t l = 0; l < 4; ++l) EXPECT_LE(dmtele::testing::residual(h, phi[l], s.energies[l]), 1e-12) << l;
    // Ground state is the singlet up to a global phase.
    EXPECT_NEAR(std::abs(inner(bell_state(BellState::PsiMinus), phi[3])), 1.0, 1e-15);
}

TEST(eigensystem, pure_dm) {
    const Spectrum s = eigensystem({0.0, 1.0, 1.0});
    EXPECT_EQ(s.energies, (std::array<double, 4>{0.0, 0.0, 2.0, -2.0}));
    EXPECT_NEAR(s.theta1, pi / 4, 1e-15);
    EXPECT_NEAR(s.theta2, pi / 4, 1e-15);
}

TEST(eigensystem, ferromagnet_without_dm) {
    const ChannelParams p{-1.0, 0.0, 1.0};
    const Spectrum s = eigensystem(p);
    EXPECT_EQ(s.energies, (std::array<double, 4>{-1.0, -1.0, 3.0, -1.0}));
    EXPECT_EQ(s.theta1, 0.0);
    EXPECT_EQ(s.theta2, pi / 2);
    const auto phi = eigenvectors(s);
    const ComplexMatrix4 h = build_hamiltonian(p);
    for (std::size_t l = 0; l < 4; ++l) EXPECT_LE(dmtele::testing::residual(h, phi[l], s.energies[l]), 1e-12) << l;
    // The singlet carries eps3 = +3.
    EXPECT_NEAR(std::abs(inner(bell_state(BellState::PsiMinus), phi[2])), 1.0, 1e-15);
}

TEST(eigensystem, zero_couplings) {
    const Spectrum s = eigensystem({0.0, 0.0, 1.0});
    EXPECT_EQ(s.theta1, pi / 4);
    EXPECT_EQ(s.theta2, pi / 4);
    for (double e : s.energies) EXPECT_EQ(e, 0.0);
}

TEST(eigensystem, angles_match_atan2_form) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 500; ++trial) {
        const ChannelParams p = dmtele::testing::random_params(rng);
        const Spectrum s = eigensystem(p);
        const double r = std::hypot(p.dx, p.j);
        EXPECT_NEAR(s.theta1, std::atan2(p.dx, r - p.j), 1e-12);
        EXPECT_NEAR(s.theta2, std::atan2(p.dx, r + p.j), 1e-12);
    }
}

TEST(eigensystem, spectral_invariants_and_residuals) {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 1000; ++trial) {
        ChannelParams p = dmtele::testing::random_params(rng);
        if (trial % 10 == 0) p.dx = 0.0;
        if (trial % 10 == 1) p.j = 0.0;
        const Spectrum s = eigensystem(p);
        const double r = std::hypot(p.dx, p.j);
        const double scale = std::max(1.0, r);
        EXPECT_EQ(s.energies[0], p.j);
        EXPECT_EQ(s.energies[1], p.j);
        EXPECT_NEAR(s.energies[2] + s.energies[3], -2.0 * p.j, 1e-15 * scale);
        EXPECT_NEAR(s.energies[2] - s.energies[3], 4.0 * r, 1e-15 * scale);
        EXPECT_NEAR(s.energies[0] + s.energies[1] + s.energies[2] + s.energies[3], 0.0, 4e-15 * scale);

        const auto phi = eigenvectors(s);
        const ComplexMatrix4 h = build_hamiltonian(p);
        for (std::size_t l = 0; l < 4; ++l) {
            EXPECT_LE(dmtele::testing::residual(h, phi[l], s.energies[l]), 1e-10) << trial << " l=" << l;
            for (std::size_t m = 0; m < 4; ++m)
                EXPECT_NEAR(std::abs(inner(phi[l], phi[m]) - (l == m ? 1.0 : 0.0)), 0.0, 1e-12);
        }
        const auto oracle = hermitian_eig(h);
        std::array<double, 4> sorted = s.energies;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < 4; ++k) EXPECT_NEAR(sorted[k], oracle.eigenvalues[k], 1e-12 * scale);
    }
}

TEST(eigenvectors, parameter_independent_pair) {
    const double h = 1.0 / std::sqrt(2.0);
    for (const ChannelParams& p : {ChannelParams{1, 2, 1}, ChannelParams{-0.3, 0.1, 1}, ChannelParams{0, 0, 1}}) {
        const auto phi = eigenvectors(eigensystem(p));
        EXPECT_EQ(phi[0][0], Complex(h));
        EXPECT_EQ(phi[0][3], Complex(h));
        EXPECT_EQ(phi[1][1], Complex(h));
        EXPECT_EQ(phi[1][2], Complex(h));
    }
}

TEST(partition_function, values) {
    EXPECT_NEAR(partition_function({0.0, 0.0, 1.0}), 4.0, 1e-14);
    const double expected = 3.0 * std::exp(-1.0) + std::exp(3.0);
    EXPECT_NEAR(partition_function({1.0, 0.0, 1.0}), expected, 1e-12 * expected);
    EXPECT_NEAR(expected, 21.1892, 1e-4);
    EXPECT_THROW(partition_function({1.0, 0.0, 0.0}), std::invalid_argument);
}

TEST(partition_function, matches_closed_form_and_boltzmann_sum) {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 1000; ++trial) {
        const ChannelParams p = dmtele::testing::random_params(rng);
        const double beta = 1.0 / p.temperature;
        const double r = std::hypot(p.dx, p.j);
        const double closed = 2.0 * std::exp(-beta * p.j) + 2.0 * std::exp(beta * p.j) * std::cosh(2.0 * beta * r);
        const auto oracle = hermitian_eig(build_hamiltonian(p));
        double sum = 0.0;
        for (double e : oracle.eigenvalues) sum += std::exp(-beta * e);
        const double z = partition_function(p);
        EXPECT_NEAR(z, closed, 1e-12 * closed) << trial;
        EXPECT_NEAR(z, sum, 1e-12 * sum) << trial;
    }
}

TEST(partition_function, no_overflow_at_low_temperature) {
    const ChannelParams p{3.0, 3.0, 1e-3};
    EXPECT_TRUE(std::isfinite(log_partition_function(p)));
    const ThermalElements el = thermal_elements(p);
    EXPECT_TRUE(std::isfinite(el.z));
    EXPECT_NO_THROW(DensityMatrix4::validate(thermal_state(p).matrix()));
}

TEST(thermal_elements, infinite_temperature_limit_at_zero_coupling) {
    const ThermalElements el = thermal_elements({0.0, 0.0, 1.0}).physical();
    EXPECT_NEAR(el.a, 1.0, 1e-15);
    EXPECT_NEAR(el.b, 1.0, 1e-15);
    EXPECT_NEAR(el.c, 0.0, 1e-15);
    EXPECT_NEAR(el.d, 0.0, 1e-15);
    EXPECT_NEAR(el.mu, 0.0, 1e-15);
    EXPECT_NEAR(el.nu, 0.0, 1e-15);
    EXPECT_NEAR(el.z, 4.0, 1e-15);
}

TEST(thermal_elements, antiferromagnet_substitution) {
    const ThermalElements el = thermal_elements({1.0, 0.0, 1.0}).physical();
    const double em1 = std::exp(-1.0), e3 = std::exp(3.0);
    EXPECT_NEAR(el.a, em1, 1e-13);
    EXPECT_NEAR(el.b, 0.5 * (em1 + e3), 1e-13);
    EXPECT_NEAR(el.c, 0.0, 1e-13);
    EXPECT_NEAR(el.d, 0.5 * (em1 - e3), 1e-13);
    EXPECT_NEAR(el.mu, 0.0, 1e-13);
    EXPECT_NEAR(el.nu, 0.0, 1e-13);

    // Same numbers straight from the oracle Gibbs state.
    const ChannelParams p{1.0, 0.0, 1.0};
    const DensityMatrix4 rho = gibbs_state_oracle(build_hamiltonian(p), 1.0);
    const double z = partition_function(p);
    EXPECT_NEAR(rho(0, 0).real() * z, el.a, 1e-12);
    EXPECT_NEAR(rho(1, 1).real() * z, el.b, 1e-12);
    EXPECT_NEAR(rho(1, 2).real() * z, el.d, 1e-12);
}

TEST(thermal_elements, invariants) {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 1000; ++trial) {
        const ChannelParams p = dmtele::testing::random_params(rng);
        const ThermalElements el = thermal_elements(p);
        EXPECT_NEAR(el.a + el.b, 0.5 * el.z, 1e-12 * el.z);
        EXPECT_EQ(el.nu, -el.mu);
        EXPECT_GT(el.a, 0.0);
        EXPECT_GT(el.b, 0.0);
        EXPECT_LE(std::abs(el.c), el.a * (1 + 1e-15));
        EXPECT_LE(std::abs(el.d), el.b * (1 + 1e-15));

        ChannelParams mirrored = p;
        mirrored.dx = -p.dx;
        const ThermalElements m = thermal_elements(mirrored);
        EXPECT_EQ(m.a, el.a);
        EXPECT_EQ(m.b, el.b);
        EXPECT_EQ(m.c, el.c);
        EXPECT_EQ(m.d, el.d);
        EXPECT_EQ(m.mu, -el.mu);
        EXPECT_EQ(m.nu, -el.nu);
    }
}

TEST(thermal_state, zero_couplings_any_temperature) {
    for (double t : {0.0, 0.1, 1.0, 100.0}) {
        EXPECT_LT(max_abs_diff(thermal_state({0.0, 0.0, t}).matrix(), 0.25 * ComplexMatrix4::identity()), 1e-15)
            << t;
    }
}

TEST(thermal_state, matches_oracle) {
    const ChannelParams p{1.0, 1.0, 1.0};
    EXPECT_LT(max_abs_diff(thermal_state(p).matrix(), gibbs_state_oracle(build_hamiltonian(p), 1.0).matrix()), 1e-10);

    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 1000; ++trial) {
        const ChannelParams q = dmtele::testing::random_params(rng);
        const DensityMatrix4 closed = thermal_state(q);
        const DensityMatrix4 oracle = gibbs_state_oracle(build_hamiltonian(q), 1.0 / q.temperature);
        ASSERT_LT(max_abs_diff(closed.matrix(), oracle.matrix()), 1e-10) << trial;
        ASSERT_NO_THROW(DensityMatrix4::validate(closed.matrix())) << trial;
    }
}

TEST(thermal_state, zero_temperature_singlet) {
    const DensityMatrix4 rho = thermal_state({1.0, 0.0, 0.0});
    EXPECT_LT(max_abs_diff(rho.matrix(), singlet_projector()), 1e-15);
    const DensityMatrix4 oracle = gibbs_state_oracle(build_hamiltonian({1.0, 0.0, 0.0}), kZeroTemperature);
    EXPECT_LT(max_abs_diff(rho.matrix(), oracle.matrix()), 1e-14);
}

TEST(thermal_state, zero_temperature_degenerate_triplet) {
    // J < 0, Dx = 0: three-fold degenerate triplet ground space.
    const DensityMatrix4 rho = thermal_state({-1.0, 0.0, 0.0});
    const ComplexMatrix4 expected = (1.0 / 3.0) * (ComplexMatrix4::identity() - singlet_projector());
    EXPECT_LT(max_abs_diff(rho.matrix(), expected), 1e-15);
}

TEST(thermal_state, zero_temperature_with_dm_matches_oracle) {
    for (const ChannelParams& p : {ChannelParams{1, 1, 0}, ChannelParams{-1, 1, 0}, ChannelParams{0, 2, 0}}) {
        const DensityMatrix4 oracle = gibbs_state_oracle(build_hamiltonian(p), kZeroTemperature);
        EXPECT_LT(max_abs_diff(thermal_state(p).matrix(), oracle.matrix()), 1e-12);
    }
}

TEST(channel_params, validation) {
    EXPECT_THROW(thermal_state({std::nan(""), 0.0, 1.0}), std::invalid_argument);
    EXPECT_THROW(thermal_state({0.0, INFINITY, 1.0}), std::invalid_argument);
    EXPECT_THROW(thermal_state({0.0, 0.0, -1.0}), std::invalid_argument);
}
