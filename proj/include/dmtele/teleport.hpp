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

// Two-qubit entanglement teleportation through two copies of the thermal
// chain state, modelled as the generalized depolarizing channel
//
//   rho_out = sum_{n,m} p_nm (s^n (x) s^m) rho_in (s^n (x) s^m),
//   p_nm    = Tr[E^n rho_ch] Tr[E^m rho_ch],
//
// with the Bell projector E^n paired with the Pauli operator s^n
// (n = 0, x, y, z). The input is |psi_in> = cos(t/2)|10> + sin(t/2)|01>,
// whose concurrence is sin(t).

#ifndef DMTELE_TELEPORT_HPP
#define DMTELE_TELEPORT_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "dmtele/linalg.hpp"
#include "dmtele/model.hpp"

namespace dmtele {

/// p[n][m]; indices follow the Bell projector order E^0..E^3.
using BellProbabilities = std::array<std::array<double, 4>, 4>;

inline constexpr double kProbabilityClampTol = 1e-14;
inline constexpr double kLambdaClampTol = 1e-14;

namespace detail {

inline void require_theta(double theta) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
        std::ostringstream msg;
        msg << "input angle theta = " << theta << " outside [0, pi]";
        throw std::invalid_argument(msg.str());
    }
}

inline void require_concurrence(double c_in) {
    if (!(c_in >= 0.0 && c_in <= 1.0)) {
        std::ostringstream msg;
        msg << "input concurrence " << c_in << " outside [0, 1]";
        throw std::invalid_argument(msg.str());
    }
}

}  // namespace detail

struct InputState {
    double theta = std::numbers::pi / 2;

    /// theta = asin(c_in) on [0, pi/2]; the pi - theta branch teleports
    /// identically.
    static InputState from_concurrence(double c_in) {
        detail::require_concurrence(c_in);
        return InputState{std::asin(c_in)};
    }

    double c_in() const { return std::sin(theta); }
};

inline StateVector4 input_vector(double theta) {
    detail::require_theta(theta);
    return {0.0, std::sin(theta / 2), std::cos(theta / 2), 0.0};
}

inline DensityMatrix4 input_state(double theta) {
    detail::require_theta(theta);
    const double s = std::sin(theta / 2);
    const double c = std::cos(theta / 2);
    ComplexMatrix4 m;
    m(1, 1) = s * s;
    m(2, 2) = c * c;
    m(1, 2) = 0.5 * std::sin(theta);
    m(2, 1) = m(1, 2);
    return DensityMatrix4::unchecked(m);
}

/// Tr[E^n rho] for the four Bell projectors.
inline std::array<double, 4> bell_overlaps(const DensityMatrix4& rho) {
    const auto e = bell_projectors();
    std::array<double, 4> q{};
    for (std::size_t n = 0; n < 4; ++n) {
        q[n] = detail::clamp_nonnegative((e[n] * rho.matrix()).trace().real(), kProbabilityClampTol,
                                         "Bell overlap");
    }
    return q;
}

inline BellProbabilities channel_probabilities(const DensityMatrix4& rho_channel) {
    const std::array<double, 4> q = bell_overlaps(rho_channel);
    BellProbabilities p{};
    for (std::size_t n = 0; n < 4; ++n)
        for (std::size_t m = 0; m < 4; ++m) p[n][m] = q[n] * q[m];
    return p;
}

/// The 16-term channel sum, evaluated term by term.
inline DensityMatrix4 teleport_output_sum(const DensityMatrix4& rho_in, const DensityMatrix4& rho_channel) {
    const BellProbabilities p = channel_probabilities(rho_channel);
    ComplexMatrix4 out;
    for (int n = 0; n < 4; ++n) {
        for (int m = 0; m < 4; ++m) {
            if (p[n][m] == 0.0) continue;
            const ComplexMatrix4 u = pauli_pair(n, m);
            out += p[n][m] * (u * rho_in.matrix() * u);
        }
    }
    return DensityMatrix4::unchecked(0.5 * (out + out.adjoint()));
}

/// Nonzero entries of the X-shaped output state, in the (shifted) units of
/// ThermalElements. rho_out = (1/Z^2) [[w,0,0,x],[0,A+,B,0],[0,B,A-,0],[x,0,0,w]].
struct OutputComponents {
    double omega = 0.0;
    double chi = 0.0;
    double a_plus = 0.0;
    double a_minus = 0.0;
    double b = 0.0;
    double z = 0.0;

    DensityMatrix4 density() const {
        const double z2 = z * z;
        ComplexMatrix4 m;
        m(0, 0) = omega / z2;
        m(3, 3) = omega / z2;
        m(0, 3) = chi / z2;
        m(3, 0) = chi / z2;
        m(1, 1) = a_plus / z2;
        m(2, 2) = a_minus / z2;
        m(1, 2) = b / z2;
        m(2, 1) = b / z2;
        return DensityMatrix4::unchecked(m);
    }
};

inline OutputComponents output_components(const ThermalElements& el, double theta) {
    detail::require_theta(theta);
    const double a = el.a, b = el.b, c = el.c, d = el.d;
    const double st = std::sin(theta), ct = std::cos(theta);
    OutputComponents oc;
    oc.omega = 4.0 * a * b;
    oc.chi = 4.0 * c * d * st;
    oc.a_plus = 2.0 * ((a * a - b * b) * ct + a * a + b * b);
    oc.a_minus = 2.0 * (-(a * a - b * b) * ct + a * a + b * b);
    oc.b = 2.0 * (c * c + d * d) * st;
    oc.z = el.z;
    return oc;
}

struct ClosedFormOutput {
    DensityMatrix4 rho;
    OutputComponents components;
};

inline ClosedFormOutput teleport_output_closed(const ChannelParams& p, double theta) {
    const OutputComponents oc = output_components(thermal_elements(p), theta);
    return {oc.density(), oc};
}

/// Square roots of the eigenvalues of R_out = rho_out S rho_out^* S from the
/// channel elements, descending.
inline std::array<double, 4> lambdas_from_elements(const ThermalElements& el, double c_in) {
    detail::require_concurrence(c_in);
    const double a = el.a, b = el.b, c = el.c, d = el.d;
    const double z2 = el.z * el.z;
    const double ab = a * b;
    const double cd = c * d;
    const double root = std::hypot((a * a - b * b) * c_in, 2.0 * ab);
    const double coh = (c * c + d * d) * c_in;

    std::array<double, 4> l = {
        4.0 * (ab + cd * c_in) / z2,
        4.0 * (ab - cd * c_in) / z2,
        2.0 * (root + coh) / z2,
        2.0 * (root - coh) / z2,
    };
    for (double& x : l) x = detail::clamp_nonnegative(x, kLambdaClampTol, "output lambda");
    std::sort(l.begin(), l.end(), std::greater<>());
    return l;
}

inline std::array<double, 4> output_lambdas(const ChannelParams& p, double c_in) {
    detail::require_concurrence(c_in);
    return lambdas_from_elements(thermal_elements(p), c_in);
}

inline double output_concurrence(const ChannelParams& p, double c_in) {
    return concurrence_from_lambdas(output_lambdas(p, c_in));
}

/// F = h1 + h2 * c_in^2.
struct FidelityTerms {
    double fidelity = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
};

inline FidelityTerms fidelity_from_elements(const ThermalElements& el, double c_in) {
    detail::require_concurrence(c_in);
    const double a = el.a, b = el.b, c = el.c, d = el.d;
    const double z2 = el.z * el.z;
    FidelityTerms f;
    f.h1 = 4.0 * b * b / z2;
    f.h2 = 2.0 * (a * a - b * b + c * c + d * d) / z2;
    f.fidelity = f.h1 + f.h2 * c_in * c_in;
    return f;
}

inline FidelityTerms output_fidelity(const ChannelParams& p, double c_in) {
    detail::require_concurrence(c_in);
    return fidelity_from_elements(thermal_elements(p), c_in);
}

/// Everything the protocol produces for one channel and one input angle.
struct TeleportOutcome {
    DensityMatrix4 rho_out = DensityMatrix4::maximally_mixed();
    BellProbabilities p{};
    std::array<double, 4> lambdas{};
    double c_in = 0.0;
    double c_out = 0.0;
    double fidelity = 0.0;
    double h1 = 0.0;
    double h2 = 0.0;
    OutputComponents components;
};

inline TeleportOutcome teleport(const ChannelParams& params, double theta) {
    const ThermalElements el = thermal_elements(params);
    TeleportOutcome out;
    out.components = output_components(el, theta);
    out.rho_out = out.components.density();
    out.p = channel_probabilities(thermal_state(params));
    out.c_in = std::clamp(std::sin(theta), 0.0, 1.0);
    out.lambdas = lambdas_from_elements(el, out.c_in);
    out.c_out = concurrence_from_lambdas(out.lambdas);
    const FidelityTerms f = fidelity_from_elements(el, out.c_in);
    out.fidelity = f.fidelity;
    out.h1 = f.h1;
    out.h2 = f.h2;
    return out;
}

/// Temperature above which the output concurrence vanishes.
///
/// Scans 256 evenly spaced temperatures on (0, t_max], then bisects to 1e-6
/// between the last entangled sample and its successor. Returns nullopt when
/// the output is separable at every sample or still entangled at t_max.
inline std::optional<double> critical_temperature(double j, double dx, double c_in, double t_max) {
    constexpr int kScanPoints = 256;
    constexpr double kBisectTol = 1e-6;
    constexpr double kEntangled = 1e-12;

    if (!(t_max > 0.0) || !std::isfinite(t_max))
        throw std::invalid_argument("critical_temperature: t_max must be finite and > 0");
    detail::require_concurrence(c_in);

    const auto entangled = [&](double t) {
        return output_concurrence(ChannelParams{j, dx, t}, c_in) > kEntangled;
    };

    int last = 0;
    for (int k = 1; k <= kScanPoints; ++k)
        if (entangled(t_max * k / kScanPoints)) last = k;
    if (last == 0 || last == kScanPoints) return std::nullopt;

    double lo = t_max * last / kScanPoints;
    double hi = t_max * (last + 1) / kScanPoints;
    while (hi - lo > kBisectTol) {
        const double mid = 0.5 * (lo + hi);
        (entangled(mid) ? lo : hi) = mid;
    }
    return hi;
}

}  // namespace dmtele

#endif  // DMTELE_TELEPORT_HPP
