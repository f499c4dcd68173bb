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

// Two-qubit Heisenberg XXX chain with an x-component Dzyaloshinskii-Moriya
// term:
//
//   H = J (XX + YY + ZZ) + Dx (Y (x) Z - Z (x) Y)
//
// Spectrum, eigenvectors and the Gibbs state are all available in closed
// form. Units have k_B = 1, so the temperature is an energy.

#ifndef DMTELE_MODEL_HPP
#define DMTELE_MODEL_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "dmtele/linalg.hpp"
#include "dmtele/matrix4.hpp"

namespace dmtele {

struct ChannelParams {
    double j = 0.0;
    double dx = 0.0;
    double temperature = 1.0;

    /// Throws std::invalid_argument naming the offending field.
    void validate() const {
        if (!std::isfinite(j)) throw std::invalid_argument("ChannelParams: j must be finite");
        if (!std::isfinite(dx)) throw std::invalid_argument("ChannelParams: dx must be finite");
        if (!std::isfinite(temperature) || temperature < 0.0)
            throw std::invalid_argument("ChannelParams: temperature must be finite and >= 0");
    }

    bool zero_temperature() const { return temperature == 0.0; }
};

struct Spectrum {
    /// eps1 = eps2 = J, eps3,4 = -J +/- 2 sqrt(Dx^2 + J^2).
    std::array<double, 4> energies{};
    double theta1 = 0.0;
    double theta2 = 0.0;
};

inline ComplexMatrix4 build_hamiltonian(const ChannelParams& p) {
    const double j = p.j;
    const Complex id{0.0, p.dx};
    ComplexMatrix4 h;
    h(0, 0) = j;    h(0, 1) = id;      h(0, 2) = -id;     h(0, 3) = 0.0;
    h(1, 0) = -id;  h(1, 1) = -j;      h(1, 2) = 2.0 * j; h(1, 3) = id;
    h(2, 0) = id;   h(2, 1) = 2.0 * j; h(2, 2) = -j;      h(2, 3) = -id;
    h(3, 0) = 0.0;  h(3, 1) = -id;     h(3, 2) = id;      h(3, 3) = j;
    return h;
}

/// Closed-form spectrum and mixing angles.
///
/// theta1 = atan(Dx / (r - J)), theta2 = atan(Dx / (r + J)), r = sqrt(Dx^2 + J^2).
/// Each angle is evaluated through whichever of the equivalent forms
/// Dx/(r -/+ J) or (r +/- J)/Dx avoids cancellation. At Dx = 0 the 0/0 angle
/// takes its Dx -> 0+ limit.
inline Spectrum eigensystem(const ChannelParams& p) {
    using std::numbers::pi;
    const double j = p.j;
    const double d = p.dx;
    const double r = std::hypot(d, j);

    Spectrum s;
    s.energies = {j, j, -j + 2.0 * r, -j - 2.0 * r};

    if (d == 0.0) {
        if (j > 0.0) {
            s.theta1 = pi / 2;
            s.theta2 = 0.0;
        } else if (j < 0.0) {
            s.theta1 = 0.0;
            s.theta2 = pi / 2;
        } else {
            s.theta1 = pi / 4;
            s.theta2 = pi / 4;
        }
    } else if (j >= 0.0) {
        s.theta1 = std::atan((r + j) / d);
        s.theta2 = std::atan(d / (r + j));
    } else {
        s.theta1 = std::atan(d / (r - j));
        s.theta2 = std::atan((r - j) / d);
    }
    return s;
}

/// phi1..phi4 in the computational basis; phi_l belongs to energies[l].
inline std::array<StateVector4, 4> eigenvectors(const Spectrum& s) {
    const double h = 1.0 / std::sqrt(2.0);
    const Complex i{0.0, 1.0};
    const double s1 = std::sin(s.theta1), c1 = std::cos(s.theta1);
    const double s2 = std::sin(s.theta2), c2 = std::cos(s.theta2);
    return {
        StateVector4{h, 0.0, 0.0, h},
        StateVector4{0.0, h, h, 0.0},
        StateVector4{-h * s1, i * (h * c1), -i * (h * c1), h * s1},
        StateVector4{-h * s2, -i * (h * c2), i * (h * c2), h * s2},
    };
}

/// Matrix elements of the Gibbs state before normalization:
///
///        | a    i mu  i nu  c    |
///   Z rho = | -i mu  b    d   -i nu |
///        | -i nu  d    b   -i mu |
///        | c    i nu  i mu  a    |
///
/// All weights are stored shifted by the ground energy, i.e. multiplied by
/// exp(beta * ground_energy), which keeps them finite at any temperature.
/// Ratios such as a / z are unaffected. At T = 0 (beta = inf) the weights
/// are 1 on the ground eigenspace and 0 elsewhere, so z is the ground-state
/// degeneracy.
struct ThermalElements {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double mu = 0.0;
    double nu = 0.0;
    double z = 0.0;
    double beta = 0.0;
    double ground_energy = 0.0;

    /// Unshifted elements. Only meaningful for finite beta; may overflow at
    /// very low temperature.
    ThermalElements physical() const {
        if (std::isinf(beta)) throw std::domain_error("ThermalElements::physical: undefined at T = 0");
        const double f = std::exp(-beta * ground_energy);
        ThermalElements r = *this;
        r.a *= f; r.b *= f; r.c *= f; r.d *= f; r.mu *= f; r.nu *= f; r.z *= f;
        r.ground_energy = 0.0;
        return r;
    }
};

namespace detail {

inline std::array<double, 4> shifted_boltzmann_weights(const Spectrum& s, double temperature) {
    const auto& e = s.energies;
    const double ground = *std::min_element(e.begin(), e.end());
    std::array<double, 4> w{};
    if (temperature == 0.0) {
        double max_abs = 0.0;
        for (double x : e) max_abs = std::max(max_abs, std::abs(x));
        const double tol = kDegeneracyRelTol * max_abs;
        for (std::size_t l = 0; l < 4; ++l) w[l] = (e[l] - ground <= tol) ? 1.0 : 0.0;
    } else {
        const double beta = 1.0 / temperature;
        for (std::size_t l = 0; l < 4; ++l) w[l] = std::exp(-beta * (e[l] - ground));
    }
    return w;
}

}  // namespace detail

/// Gibbs-state matrix elements; T = 0 gives the ground-projector elements.
inline ThermalElements thermal_elements(const ChannelParams& p) {
    p.validate();
    const Spectrum s = eigensystem(p);
    const std::array<double, 4> w = detail::shifted_boltzmann_weights(s, p.temperature);

    const double s1 = std::sin(s.theta1), c1 = std::cos(s.theta1);
    const double s2 = std::sin(s.theta2), c2 = std::cos(s.theta2);
    const double w3s = 0.5 * w[2] * s1 * s1, w4s = 0.5 * w[3] * s2 * s2;
    const double w3c = 0.5 * w[2] * c1 * c1, w4c = 0.5 * w[3] * c2 * c2;
    const double w3sc = 0.5 * w[2] * s1 * c1, w4sc = 0.5 * w[3] * s2 * c2;

    ThermalElements el;
    el.a = 0.5 * w[0] + w3s + w4s;
    el.b = 0.5 * w[1] + w3c + w4c;
    el.c = 0.5 * w[0] - w3s - w4s;
    el.d = 0.5 * w[1] - w3c - w4c;
    el.mu = w3sc - w4sc;
    el.nu = w4sc - w3sc;
    el.z = w[0] + w[1] + w[2] + w[3];
    el.beta = p.zero_temperature() ? std::numeric_limits<double>::infinity() : 1.0 / p.temperature;
    el.ground_energy = *std::min_element(s.energies.begin(), s.energies.end());
    return el;
}

/// ln Z for T > 0, evaluated without overflow.
inline double log_partition_function(const ChannelParams& p) {
    p.validate();
    if (p.zero_temperature()) throw std::invalid_argument("partition_function: temperature must be > 0");
    const Spectrum s = eigensystem(p);
    const std::array<double, 4> w = detail::shifted_boltzmann_weights(s, p.temperature);
    const double ground = *std::min_element(s.energies.begin(), s.energies.end());
    return std::log(w[0] + w[1] + w[2] + w[3]) - ground / p.temperature;
}

/// Z = 2 e^{-beta J} + 2 e^{beta J} cosh(2 beta sqrt(Dx^2 + J^2)), T > 0.
inline double partition_function(const ChannelParams& p) { return std::exp(log_partition_function(p)); }

/// rho(T) = e^{-beta H} / Z assembled from the closed-form elements.
/// T = 0 gives the equal-weight mixture over the ground eigenspace.
inline DensityMatrix4 thermal_state(const ChannelParams& p) {
    const ThermalElements el = thermal_elements(p);
    const Complex i{0.0, 1.0};
    const double a = el.a / el.z, b = el.b / el.z, c = el.c / el.z, d = el.d / el.z;
    const double mu = el.mu / el.z, nu = el.nu / el.z;
    ComplexMatrix4 m;
    m(0, 0) = a;        m(0, 1) = i * mu;  m(0, 2) = i * nu;  m(0, 3) = c;
    m(1, 0) = -i * mu;  m(1, 1) = b;       m(1, 2) = d;       m(1, 3) = -i * nu;
    m(2, 0) = -i * nu;  m(2, 1) = d;       m(2, 2) = b;       m(2, 3) = -i * mu;
    m(3, 0) = c;        m(3, 1) = i * nu;  m(3, 2) = i * mu;  m(3, 3) = a;
    return DensityMatrix4::unchecked(m);
}

}  // namespace dmtele

#endif  // DMTELE_MODEL_HPP
