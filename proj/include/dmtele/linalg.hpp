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

// Brute-force dense linear algebra on two-qubit operators.
//
// Nothing in here knows about the spin-chain model. The routines are the
// ground truth every closed-form result in model.hpp and teleport.hpp is
// checked against, so keep them generic.

#ifndef DMTELE_LINALG_HPP
#define DMTELE_LINALG_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "dmtele/matrix4.hpp"

namespace dmtele {

//------------------------------------------------------------------------------
// Pauli and Bell constructors
//------------------------------------------------------------------------------

/// sigma^0 = I, sigma^1 = X, sigma^2 = Y, sigma^3 = Z.
inline Matrix2 pauli(int n) {
    const Complex i{0.0, 1.0};
    Matrix2 m;
    switch (n) {
        case 0: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
        case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
        case 2: m(0, 1) = -i; m(1, 0) = i; break;
        case 3: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
        default: throw std::out_of_range("pauli index " + std::to_string(n) + " not in 0..3");
    }
    return m;
}

/// sigma^n (x) sigma^m.
inline ComplexMatrix4 pauli_pair(int n, int m) { return kron(pauli(n), pauli(m)); }

/// sigma^y (x) sigma^y, the spin-flip used by the Wootters concurrence.
inline ComplexMatrix4 spin_flip() { return pauli_pair(2, 2); }

/// Bell projector ordering used for the teleportation channel: E^0..E^3.
enum class BellState { PsiMinus = 0, PhiMinus = 1, PhiPlus = 2, PsiPlus = 3 };

inline StateVector4 bell_state(BellState which) {
    const double h = 1.0 / std::sqrt(2.0);
    switch (which) {
        case BellState::PsiMinus: return {0.0, h, -h, 0.0};
        case BellState::PhiMinus: return {h, 0.0, 0.0, -h};
        case BellState::PhiPlus: return {h, 0.0, 0.0, h};
        case BellState::PsiPlus: return {0.0, h, h, 0.0};
    }
    throw std::logic_error("unreachable");
}

/// E^0 = |Psi-><Psi-|, E^1 = |Phi-><Phi-|, E^2 = |Phi+><Phi+|, E^3 = |Psi+><Psi+|.
inline std::array<ComplexMatrix4, 4> bell_projectors() {
    return {projector(bell_state(BellState::PsiMinus)), projector(bell_state(BellState::PhiMinus)),
            projector(bell_state(BellState::PhiPlus)), projector(bell_state(BellState::PsiPlus))};
}

//------------------------------------------------------------------------------
// Hermitian eigensolver
//------------------------------------------------------------------------------

struct HermitianEigenResult {
    /// Ascending.
    std::array<double, 4> eigenvalues{};
    /// eigenvectors[k] belongs to eigenvalues[k].
    std::array<StateVector4, 4> eigenvectors{};

    ComplexMatrix4 reconstruct() const {
        ComplexMatrix4 m;
        for (std::size_t k = 0; k < 4; ++k) m += eigenvalues[k] * projector(eigenvectors[k]);
        return m;
    }
};

namespace detail {

inline void require_hermitian(const ComplexMatrix4& m, double tol, const char* who) {
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = i; j < 4; ++j) {
            const double dev = std::abs(m(i, j) - std::conj(m(j, i)));
            if (!(dev <= tol)) {
                std::ostringstream msg;
                msg << who << ": matrix is not Hermitian: entries (" << i << "," << j << ") and (" << j
                    << "," << i << ") differ from conjugate symmetry by " << dev;
                throw std::invalid_argument(msg.str());
            }
        }
    }
}

template <class R>
using ComplexMatrix4Of = SquareMatrix<4, std::complex<R>>;

// Applies A <- U^H A U and V <- V U for the unitary acting on rows/cols p, q
// that annihilates A(p,q).
template <class R>
void jacobi_rotate(ComplexMatrix4Of<R>& a, ComplexMatrix4Of<R>& v, std::size_t p, std::size_t q) {
    using C = std::complex<R>;
    const C apq = a(p, q);
    const R g = std::abs(apq);
    if (g == R(0)) return;
    const C phase = std::conj(apq / g);

    const R app = a(p, p).real();
    const R aqq = a(q, q).real();
    const R theta = (aqq - app) / (R(2) * g);
    R t = R(1) / (std::abs(theta) + std::sqrt(theta * theta + R(1)));
    if (theta < R(0)) t = -t;
    const R c = R(1) / std::sqrt(t * t + R(1));
    const R s = t * c;

    const C u_pp = c;
    const C u_pq = s;
    const C u_qp = -s * phase;
    const C u_qq = c * phase;

    for (std::size_t i = 0; i < 4; ++i) {
        const C aip = a(i, p);
        const C aiq = a(i, q);
        a(i, p) = aip * u_pp + aiq * u_qp;
        a(i, q) = aip * u_pq + aiq * u_qq;
        const C vip = v(i, p);
        const C viq = v(i, q);
        v(i, p) = vip * u_pp + viq * u_qp;
        v(i, q) = vip * u_pq + viq * u_qq;
    }
    for (std::size_t j = 0; j < 4; ++j) {
        const C apj = a(p, j);
        const C aqj = a(q, j);
        a(p, j) = std::conj(u_pp) * apj + std::conj(u_qp) * aqj;
        a(q, j) = std::conj(u_pq) * apj + std::conj(u_qq) * aqj;
    }
    a(p, q) = R(0);
    a(q, p) = R(0);
    a(p, p) = a(p, p).real();
    a(q, q) = a(q, q).real();
}

template <class R>
R off_diagonal_norm(const ComplexMatrix4Of<R>& a) {
    R s = 0;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
}

template <class R>
struct JacobiResult {
    std::array<R, 4> eigenvalues{};  // ascending
    ComplexMatrix4Of<R> vectors;     // column k belongs to eigenvalues[k]
};

// Cyclic Jacobi on an already Hermitian matrix, in working precision R.
template <class R>
JacobiResult<R> jacobi_eig(ComplexMatrix4Of<R> a) {
    constexpr int kMaxSweeps = 64;
    const R tol = R(64) * std::numeric_limits<R>::epsilon();

    ComplexMatrix4Of<R> v = ComplexMatrix4Of<R>::identity();
    const R scale = a.frobenius_norm();

    bool converged = scale == R(0);
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        if (off_diagonal_norm(a) <= tol * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < 3; ++p)
            for (std::size_t q = p + 1; q < 4; ++q) jacobi_rotate(a, v, p, q);
    }
    if (!converged && off_diagonal_norm(a) > tol * scale)
        throw std::runtime_error("hermitian_eig: Jacobi iteration did not converge");

    std::array<std::size_t, 4> order{0, 1, 2, 3};
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

    JacobiResult<R> r;
    for (std::size_t k = 0; k < 4; ++k) {
        r.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < 4; ++i) r.vectors(i, k) = v(i, order[k]);
    }
    return r;
}

}  // namespace detail

/// Cyclic complex Jacobi eigendecomposition of a Hermitian 4x4 matrix.
///
/// Throws std::invalid_argument when `m` deviates from Hermitian symmetry by
/// more than 1e-10 (scaled by max(1, max|m_ij|)); the message names the
/// offending entry pair.
inline HermitianEigenResult hermitian_eig(const ComplexMatrix4& m) {
    detail::require_hermitian(m, 1e-10 * std::max(1.0, m.max_abs()), "hermitian_eig");
    const auto j = detail::jacobi_eig<double>(0.5 * (m + m.adjoint()));

    HermitianEigenResult r;
    r.eigenvalues = j.eigenvalues;
    for (std::size_t k = 0; k < 4; ++k)
        for (std::size_t i = 0; i < 4; ++i) r.eigenvectors[k][i] = j.vectors(i, k);
    return r;
}

//------------------------------------------------------------------------------
// Density matrices
//------------------------------------------------------------------------------

inline constexpr double kDensityHermitianTol = 1e-12;
inline constexpr double kDensityTraceTol = 1e-12;
inline constexpr double kNegativeEigenvalueTol = 1e-10;

/// Hermitian, unit-trace, positive semidefinite 4x4 operator.
class DensityMatrix4 {
public:
    /// Validates; throws std::invalid_argument on violation.
    explicit DensityMatrix4(const ComplexMatrix4& m) : m_(m) { validate(m_); }

    /// For results that are valid by construction (closed forms).
    static DensityMatrix4 unchecked(const ComplexMatrix4& m) { return DensityMatrix4(m, Unchecked{}); }

    static DensityMatrix4 maximally_mixed() { return unchecked(0.25 * ComplexMatrix4::identity()); }

    const ComplexMatrix4& matrix() const { return m_; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

    static void validate(const ComplexMatrix4& m) {
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag()))
                    throw std::invalid_argument("density matrix has non-finite entries");
        detail::require_hermitian(m, kDensityHermitianTol, "density matrix");
        const Complex tr = m.trace();
        if (std::abs(tr - 1.0) > kDensityTraceTol) {
            std::ostringstream msg;
            msg << "density matrix trace is " << tr.real() << " (expected 1)";
            throw std::invalid_argument(msg.str());
        }
        const double lowest = hermitian_eig(m).eigenvalues[0];
        if (lowest < -kNegativeEigenvalueTol) {
            std::ostringstream msg;
            msg << "density matrix is not positive semidefinite (eigenvalue " << lowest << ")";
            throw std::invalid_argument(msg.str());
        }
    }

private:
    struct Unchecked {};
    DensityMatrix4(const ComplexMatrix4& m, Unchecked) : m_(m) {}

    ComplexMatrix4 m_;
};

namespace detail {

inline double clamp_nonnegative(double x, double tol, const char* what) {
    if (x >= 0.0) return x;
    if (x >= -tol) return 0.0;
    std::ostringstream msg;
    msg << what << " is negative beyond numerical noise: " << x;
    throw std::domain_error(msg.str());
}

}  // namespace detail

/// Requests the zero-temperature limit from gibbs_state_oracle.
inline constexpr double kZeroTemperature = std::numeric_limits<double>::infinity();

/// Relative tolerance used to group ground-state eigenvalues at T = 0.
inline constexpr double kDegeneracyRelTol = 1e-12;

/// e^{-beta h} / Tr e^{-beta h} from a dense eigendecomposition.
///
/// beta = kZeroTemperature returns the equal-weight mixture over the ground
/// eigenspace.
inline DensityMatrix4 gibbs_state_oracle(const ComplexMatrix4& h, double beta) {
    if (!(beta >= 0.0)) throw std::invalid_argument("gibbs_state_oracle: beta must be >= 0");
    const HermitianEigenResult eig = hermitian_eig(h);
    const double ground = eig.eigenvalues[0];

    std::array<double, 4> w{};
    if (std::isinf(beta)) {
        double max_abs = 0.0;
        for (double e : eig.eigenvalues) max_abs = std::max(max_abs, std::abs(e));
        const double tol = kDegeneracyRelTol * max_abs;
        for (std::size_t k = 0; k < 4; ++k) w[k] = (eig.eigenvalues[k] - ground <= tol) ? 1.0 : 0.0;
    } else {
        for (std::size_t k = 0; k < 4; ++k) w[k] = std::exp(-beta * (eig.eigenvalues[k] - ground));
    }
    const double z = std::accumulate(w.begin(), w.end(), 0.0);

    ComplexMatrix4 rho;
    for (std::size_t k = 0; k < 4; ++k) rho += (w[k] / z) * projector(eig.eigenvectors[k]);
    return DensityMatrix4::unchecked(0.5 * (rho + rho.adjoint()));
}

//------------------------------------------------------------------------------
// Entanglement and fidelity
//------------------------------------------------------------------------------

/// Square roots of the eigenvalues of rho S rho^* S (S = sigma^y (x) sigma^y),
/// descending.
///
/// The spectrum is taken from the Hermitian similar matrix
/// sqrt(rho) S rho^* S sqrt(rho). Taking sqrt(rho) turns rounding noise e in
/// a near-zero eigenvalue into sqrt(e), so this runs in long double.
inline std::array<double, 4> concurrence_lambdas(const DensityMatrix4& rho) {
    using R = long double;
    using M = detail::ComplexMatrix4Of<R>;
    const M r = rho.matrix().cast<std::complex<R>>();
    const auto eig = detail::jacobi_eig<R>(r);

    M sqrt_rho;
    for (std::size_t k = 0; k < 4; ++k) {
        R p = eig.eigenvalues[k];
        if (p < R(0)) p = detail::clamp_nonnegative(static_cast<double>(p), kNegativeEigenvalueTol, "density matrix eigenvalue");
        const R sp = std::sqrt(p);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                sqrt_rho(i, j) += sp * eig.vectors(i, k) * std::conj(eig.vectors(j, k));
    }
    const M s = spin_flip().cast<std::complex<R>>();
    M m = sqrt_rho * s * r.conjugate() * s * sqrt_rho;
    m = R(0.5) * (m + m.adjoint());

    const auto spec = detail::jacobi_eig<R>(m);
    std::array<double, 4> lambdas{};
    for (std::size_t k = 0; k < 4; ++k) {
        const double e = static_cast<double>(spec.eigenvalues[3 - k]);
        lambdas[k] = std::sqrt(detail::clamp_nonnegative(e, kNegativeEigenvalueTol, "eigenvalue of rho S rho* S"));
    }
    return lambdas;
}

/// max(0, 2 max(lambda) - sum(lambda)).
inline double concurrence_from_lambdas(const std::array<double, 4>& lambdas) {
    const double top = *std::max_element(lambdas.begin(), lambdas.end());
    const double sum = lambdas[0] + lambdas[1] + lambdas[2] + lambdas[3];
    return std::max(0.0, 2.0 * top - sum);
}

/// Wootters concurrence of an arbitrary two-qubit state.
inline double wootters_concurrence(const DensityMatrix4& rho) {
    return concurrence_from_lambdas(concurrence_lambdas(rho));
}

/// <psi| rho |psi> for a unit-norm psi.
inline double pure_state_fidelity(const StateVector4& psi, const DensityMatrix4& rho) {
    const double n = psi.norm();
    if (!(std::abs(n - 1.0) <= 1e-12)) {
        std::ostringstream msg;
        msg << "pure_state_fidelity: state vector norm is " << n << " (expected 1)";
        throw std::invalid_argument(msg.str());
    }
    const Complex f = inner(psi, rho.matrix() * psi);
    if (std::abs(f.imag()) > 1e-12) throw std::logic_error("pure_state_fidelity: overlap is not real");
    return f.real();
}

}  // namespace dmtele

#endif  // DMTELE_LINALG_HPP
