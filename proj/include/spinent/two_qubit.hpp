// Copyright 2026 The spinent Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file two_qubit.hpp
 * Entanglement and nonlocality measures of two-qubit density matrices.
 */
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "quantum_core.hpp"
#include "units.hpp"

namespace spinent {

/// Tolerance for PSD checks and for clamping round-off negative eigenvalues.
inline constexpr double psd_tolerance = 1e-10;

/// Validated 4x4 density matrix: Hermitian and unit trace to 1e-12,
/// eigenvalues >= -1e-10.
class TwoQubitState {
  public:
    explicit TwoQubitState(ComplexMatrix rho) : rho_(std::move(rho)) {
        if (rho_.rows() != 4 || rho_.cols() != 4) {
            throw Error(ErrorKind::InvalidState, "two-qubit state must be 4x4");
        }
        if (!rho_.is_hermitian(1e-12)) {
            throw Error(ErrorKind::InvalidState, "density matrix not Hermitian");
        }
        const complex_t tr = rho_.trace();
        if (std::abs(tr - complex_t(1.0)) > 1e-12) {
            throw Error(ErrorKind::InvalidState, "density matrix trace != 1");
        }
        eig_ = hermitian_eig(rho_);
        if (eig_.eigenvalues.front() < -psd_tolerance) {
            throw Error(ErrorKind::InvalidState,
                        "density matrix has a negative eigenvalue");
        }
    }

    [[nodiscard]] const ComplexMatrix &rho() const noexcept { return rho_; }
    [[nodiscard]] const EigenDecomposition &spectrum() const noexcept {
        return eig_;
    }

  private:
    ComplexMatrix rho_;
    EigenDecomposition eig_;
};

using Vec3 = std::array<double, 3>;

inline ComplexMatrix pauli_along(const Vec3 &n) {
    return pauli::x() * complex_t(n[0]) + pauli::y() * complex_t(n[1]) +
           pauli::z() * complex_t(n[2]);
}

/// Four unit measurement directions of the CHSH operator
///   B = n1.s (x) (n2.s - n4.s) + n3.s (x) (n2.s + n4.s).
class BellDirections {
  public:
    BellDirections(const Vec3 &n1, const Vec3 &n2, const Vec3 &n3, const Vec3 &n4)
        : n_{n1, n2, n3, n4} {
        for (const auto &v : n_) {
            const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
            if (std::abs(norm - 1.0) > 1e-12) {
                throw Error(ErrorKind::InvalidParams,
                            "Bell direction is not a unit vector");
            }
        }
    }

    /// Directions that give maximal violation for the antiferromagnetic dimer
    /// ground state; B reduces to sqrt(2) (sz sz + sx sx).
    static BellDirections dimer_optimal() {
        const double h = 1.0 / units::sqrt2;
        return {{0.0, 0.0, -1.0}, {-h, 0.0, -h}, {-1.0, 0.0, 0.0}, {-h, 0.0, h}};
    }

    [[nodiscard]] const Vec3 &operator[](std::size_t i) const { return n_[i]; }

    [[nodiscard]] ComplexMatrix operator_matrix() const {
        const ComplexMatrix s1 = pauli_along(n_[0]);
        const ComplexMatrix s2 = pauli_along(n_[1]);
        const ComplexMatrix s3 = pauli_along(n_[2]);
        const ComplexMatrix s4 = pauli_along(n_[3]);
        return kron(s1, s2 - s4) + kron(s3, s2 + s4);
    }

  private:
    std::array<Vec3, 4> n_;
};

/// Wootters concurrence max(0, l1 - l2 - l3 - l4), l_i the square roots of
/// the eigenvalues of R = rho (sy sy) rho* (sy sy) in decreasing order.
///
/// With rho = W W^dagger, W = V diag(sqrt(p)) (negative p clamped to 0),
/// the l_i are the singular values of tau = W^T (sy sy) W. They are read
/// off as the positive eigenvalues of the Hermitian [[0, tau], [tau^dagger, 0]],
/// which keeps absolute accuracy for small l_i (no square root of a
/// round-off sized eigenvalue).
inline double concurrence(const TwoQubitState &state) {
    const EigenDecomposition &eig = state.spectrum();
    ComplexMatrix w(4, 4);
    for (std::size_t k = 0; k < 4; ++k) {
        const double root = std::sqrt(std::max(eig.eigenvalues[k], 0.0));
        for (std::size_t i = 0; i < 4; ++i) w(i, k) = root * eig.eigenvectors(i, k);
    }
    ComplexMatrix wt(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) wt(i, j) = w(j, i);
    const ComplexMatrix tau = wt * kron(pauli::y(), pauli::y()) * w;

    ComplexMatrix block(8, 8);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
            const complex_t t = 0.5 * (tau(i, j) + tau(j, i)); // tau is symmetric
            block(i, 4 + j) = t;
            block(4 + j, i) = std::conj(t);
        }
    const auto e = hermitian_eig(block).eigenvalues; // ascending: -l..., +l...
    std::array<double, 4> l{};
    for (std::size_t k = 0; k < 4; ++k) l[k] = std::max(e[7 - k], 0.0);
    const double c = l[0] - l[1] - l[2] - l[3];
    return std::clamp(c, 0.0, 1.0);
}

/// <B> = tr(rho B) for the given direction set.
inline double bell_expectation(const TwoQubitState &state,
                               const BellDirections &dirs) {
    return expectation(state.rho(), dirs.operator_matrix());
}

/// Correlation tensor T_ab = tr(rho sa (x) sb).
inline std::array<std::array<double, 3>, 3>
correlation_tensor(const TwoQubitState &state) {
    const std::array<ComplexMatrix, 3> s{pauli::x(), pauli::y(), pauli::z()};
    std::array<std::array<double, 3>, 3> t{};
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            t[a][b] = expectation(state.rho(), kron(s[a], s[b]));
    return t;
}

/// Largest CHSH value over all direction sets: 2 sqrt(u1 + u2) with u1, u2 the
/// two largest eigenvalues of T^T T.
inline double chsh_maximum(const TwoQubitState &state) {
    const auto t = correlation_tensor(state);
    ComplexMatrix ttt(3, 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < 3; ++k) s += t[k][i] * t[k][j];
            ttt(i, j) = s;
        }
    const auto u = hermitian_eig(ttt).eigenvalues;
    return 2.0 * std::sqrt(std::max(u[2] + u[1], 0.0));
}

/// Susceptibility entanglement witness
///   EW = 3 k_B T chi / ((g mu_B)^2 N S) - 1,
/// negative values certify entanglement. `chi_bar` is taken as already
/// averaged over three orthogonal field directions.
inline double witness_from_chi(double chi_bar, double temperature, double g,
                               int n_spins, double spin) {
    require_positive_temperature(temperature);
    if (n_spins < 1) {
        throw Error(ErrorKind::InvalidParams, "witness needs n_spins >= 1");
    }
    if (!(spin > 0.0) || !(g > 0.0)) {
        throw Error(ErrorKind::InvalidParams, "witness needs spin > 0 and g > 0");
    }
    return 3.0 * temperature * chi_bar /
               (units::chi_prefactor(g) * n_spins * spin) -
           1.0;
}

} // namespace spinent
