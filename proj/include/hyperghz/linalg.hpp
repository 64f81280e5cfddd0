// Copyright 2026 The hyperghz Authors
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

#pragma once

#include <array>
#include <cmath>
#include <complex>

#include "hyperghz/errors.hpp"

namespace hyperghz {

using c64 = std::complex<double>;

inline constexpr double kUnitaryTol = 1e-9;

/// 2x2 complex matrix in row-major order.
struct Mat2 {
    std::array<c64, 4> m{};  // [ m00 m01 ; m10 m11 ]

    c64 &operator()(int r, int c) { return m[static_cast<size_t>(2 * r + c)]; }
    const c64 &operator()(int r, int c) const { return m[static_cast<size_t>(2 * r + c)]; }

    static Mat2 identity() { return Mat2{{c64(1), c64(0), c64(0), c64(1)}}; }

    friend Mat2 operator*(const Mat2 &a, const Mat2 &b) {
        Mat2 r;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                r(i, j) = a(i, 0) * b(0, j) + a(i, 1) * b(1, j);
            }
        }
        return r;
    }

    bool is_unitary(double tol = kUnitaryTol) const {
        // U U^dag == I
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                c64 s = 0;
                for (int k = 0; k < 2; ++k) {
                    s += (*this)(i, k) * std::conj((*this)(j, k));
                }
                c64 want = (i == j) ? c64(1) : c64(0);
                if (std::abs(s - want) > tol) {
                    return false;
                }
            }
        }
        return true;
    }
};

/// 4x4 complex matrix in row-major order, acting on two qubits as
/// |b1 b0> -> column index 2*b1 + b0 with b1 the first target.
struct Mat4 {
    std::array<c64, 16> m{};

    c64 &operator()(int r, int c) { return m[static_cast<size_t>(4 * r + c)]; }
    const c64 &operator()(int r, int c) const { return m[static_cast<size_t>(4 * r + c)]; }

    static Mat4 identity() {
        Mat4 r;
        for (int i = 0; i < 4; ++i) {
            r(i, i) = 1;
        }
        return r;
    }

    bool is_unitary(double tol = kUnitaryTol) const {
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                c64 s = 0;
                for (int k = 0; k < 4; ++k) {
                    s += (*this)(i, k) * std::conj((*this)(j, k));
                }
                c64 want = (i == j) ? c64(1) : c64(0);
                if (std::abs(s - want) > tol) {
                    return false;
                }
            }
        }
        return true;
    }
};

inline Mat2 pauli_x() { return Mat2{{c64(0), c64(1), c64(1), c64(0)}}; }
inline Mat2 pauli_y() { return Mat2{{c64(0), c64(0, -1), c64(0, 1), c64(0)}}; }
inline Mat2 pauli_z() { return Mat2{{c64(1), c64(0), c64(0), c64(-1)}}; }
inline Mat2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return Mat2{{c64(s), c64(s), c64(s), c64(-s)}};
}

/// diag(1, e^{i*phi})
inline Mat2 phase_gate(double phi) {
    return Mat2{{c64(1), c64(0), c64(0), std::polar(1.0, phi)}};
}

inline double deg2rad(double deg) { return deg * M_PI / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / M_PI; }

}  // namespace hyperghz
