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

#ifndef DMTELE_MATRIX4_HPP
#define DMTELE_MATRIX4_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace dmtele {

using Complex = std::complex<double>;

/// Fixed-size dense square complex matrix, row-major.
///
/// Two-qubit operators use the ordered computational basis
/// |00>, |01>, |10>, |11> with qubit 1 as the left tensor factor.
template <std::size_t N, class T = Complex>
class SquareMatrix {
public:
    static constexpr std::size_t dim = N;
    using value_type = T;
    using real_type = typename T::value_type;

    constexpr SquareMatrix() = default;

    static constexpr SquareMatrix zero() { return SquareMatrix{}; }

    static constexpr SquareMatrix identity() {
        SquareMatrix m;
        for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    constexpr T& operator()(std::size_t row, std::size_t col) { return data_[row][col]; }
    constexpr const T& operator()(std::size_t row, std::size_t col) const { return data_[row][col]; }

    SquareMatrix adjoint() const {
        SquareMatrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(data_[j][i]);
        return r;
    }

    SquareMatrix conjugate() const {
        SquareMatrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(i, j) = std::conj(data_[i][j]);
        return r;
    }

    T trace() const {
        T t{};
        for (std::size_t i = 0; i < N; ++i) t += data_[i][i];
        return t;
    }

    /// Largest entry modulus.
    real_type max_abs() const {
        real_type m = 0;
        for (const auto& row : data_)
            for (const auto& v : row) m = std::max(m, std::abs(v));
        return m;
    }

    real_type frobenius_norm() const {
        real_type s = 0;
        for (const auto& row : data_)
            for (const auto& v : row) s += std::norm(v);
        return std::sqrt(s);
    }

    SquareMatrix& operator+=(const SquareMatrix& o) {
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) data_[i][j] += o.data_[i][j];
        return *this;
    }

    SquareMatrix& operator-=(const SquareMatrix& o) {
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) data_[i][j] -= o.data_[i][j];
        return *this;
    }

    SquareMatrix& operator*=(T s) {
        for (auto& row : data_)
            for (auto& v : row) v *= s;
        return *this;
    }

    friend SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
    friend SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
    friend SquareMatrix operator*(SquareMatrix a, T s) { return a *= s; }
    friend SquareMatrix operator*(T s, SquareMatrix a) { return a *= s; }

    friend SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
        SquareMatrix r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t k = 0; k < N; ++k) {
                const T aik = a.data_[i][k];
                if (aik == T{}) continue;
                for (std::size_t j = 0; j < N; ++j) r.data_[i][j] += aik * b.data_[k][j];
            }
        return r;
    }

    /// Entrywise conversion to another scalar type.
    template <class U>
    SquareMatrix<N, U> cast() const {
        SquareMatrix<N, U> r;
        for (std::size_t i = 0; i < N; ++i)
            for (std::size_t j = 0; j < N; ++j) r(i, j) = U(data_[i][j]);
        return r;
    }

    friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

private:
    std::array<std::array<T, N>, N> data_{};
};

using Matrix2 = SquareMatrix<2>;
using ComplexMatrix4 = SquareMatrix<4>;

/// Four complex amplitudes in the computational basis.
class StateVector4 {
public:
    constexpr StateVector4() = default;
    constexpr StateVector4(Complex a0, Complex a1, Complex a2, Complex a3) : amp_{a0, a1, a2, a3} {}

    constexpr Complex& operator[](std::size_t i) { return amp_[i]; }
    constexpr const Complex& operator[](std::size_t i) const { return amp_[i]; }

    double norm() const {
        double s = 0.0;
        for (const auto& a : amp_) s += std::norm(a);
        return std::sqrt(s);
    }

    friend StateVector4 operator*(Complex s, StateVector4 v) {
        for (auto& a : v.amp_) a *= s;
        return v;
    }

    friend StateVector4 operator-(StateVector4 a, const StateVector4& b) {
        for (std::size_t i = 0; i < 4; ++i) a.amp_[i] -= b.amp_[i];
        return a;
    }

private:
    std::array<Complex, 4> amp_{};
};

/// <u|v>, antilinear in the first argument.
inline Complex inner(const StateVector4& u, const StateVector4& v) {
    Complex s = 0.0;
    for (std::size_t i = 0; i < 4; ++i) s += std::conj(u[i]) * v[i];
    return s;
}

inline StateVector4 operator*(const ComplexMatrix4& m, const StateVector4& v) {
    StateVector4 r;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) r[i] += m(i, j) * v[j];
    return r;
}

/// |v><v|
inline ComplexMatrix4 projector(const StateVector4& v) {
    ComplexMatrix4 p;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) p(i, j) = v[i] * std::conj(v[j]);
    return p;
}

/// a (x) b with `a` acting on the left qubit.
inline ComplexMatrix4 kron(const Matrix2& a, const Matrix2& b) {
    ComplexMatrix4 r;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return r;
}

template <std::size_t N>
double max_abs_diff(const SquareMatrix<N>& a, const SquareMatrix<N>& b) {
    return (a - b).max_abs();
}

template <std::size_t N>
bool is_hermitian(const SquareMatrix<N>& m, double tol) {
    for (std::size_t i = 0; i < N; ++i)
        for (std::size_t j = i; j < N; ++j)
            if (std::abs(m(i, j) - std::conj(m(j, i))) > tol) return false;
    return true;
}

template <std::size_t N>
bool is_unitary(const SquareMatrix<N>& m, double tol) {
    return max_abs_diff(m.adjoint() * m, SquareMatrix<N>::identity()) <= tol;
}

}  // namespace dmtele

#endif  // DMTELE_MATRIX4_HPP
