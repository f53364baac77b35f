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

// Random states and unitaries plus independent reference routines (Eigen)
// shared by the unit and acceptance suites.
#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <random>

#include "spinent/quantum_core.hpp"
#include "spinent/two_qubit.hpp"

namespace spinent::reference {

using EMat = Eigen::MatrixXcd;

inline EMat to_eigen(const ComplexMatrix &m) {
    EMat e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
    return e;
}

inline ComplexMatrix from_eigen(const EMat &e) {
    ComplexMatrix m(e.rows(), e.cols());
    for (Eigen::Index i = 0; i < e.rows(); ++i)
        for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
    return m;
}

inline ComplexMatrix random_matrix(std::size_t n, std::mt19937_64 &rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = complex_t(z(rng), z(rng));
    return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, std::mt19937_64 &rng) {
    ComplexMatrix a = random_matrix(n, rng);
    return (a + a.adjoint()) * complex_t(0.5);
}

/// G G^dagger / tr, optionally of reduced rank.
inline ComplexMatrix random_density(std::size_t n, std::mt19937_64 &rng, std::size_t rank = 0) {
    if (rank == 0) rank = n;
    std::normal_distribution<double> z(0.0, 1.0);
    ComplexMatrix g(n, rank);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < rank; ++j) g(i, j) = complex_t(z(rng), z(rng));
    ComplexMatrix rho = g * g.adjoint();
    rho = (rho + rho.adjoint()) * complex_t(0.5);
    return rho * complex_t(1.0 / rho.trace().real());
}

/// Haar-ish unitary from the QR decomposition of a Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n, std::mt19937_64 &rng) {
    const EMat a = to_eigen(random_matrix(n, rng));
    Eigen::HouseholderQR<EMat> qr(a);
    return from_eigen(qr.householderQ() * EMat::Identity(n, n));
}

/// Wootters concurrence from the general (non-Hermitian) eigenvalues of
/// R = rho (sy sy) rho* (sy sy), computed by Eigen.
inline EMat sigma_yy() {
    EMat y(2, 2);
    y << 0, std::complex<double>(0, -1), std::complex<double>(0, 1), 0;
    EMat yy(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) yy(2 * i + k, 2 * j + l) = y(i, j) * y(k, l);
    return yy;
}

// Eigenvalues of rho * yy * conj(rho) * yy with a non-Hermitian solver. Square
// roots of round-off eigenvalues make this accurate only to ~1e-8 for
// rank-deficient states.
inline double reference_concurrence_general(const ComplexMatrix &rho) {
    const EMat yy = sigma_yy();
    const EMat r = to_eigen(rho);
    const EMat big_r = r * yy * r.conjugate() * yy;
    Eigen::ComplexEigenSolver<EMat> es(big_r);
    std::vector<double> roots;
    for (int k = 0; k < 4; ++k) roots.push_back(std::sqrt(std::max(es.eigenvalues()(k).real(), 0.0)));
    std::sort(roots.rbegin(), roots.rend());
    return std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]);
}

// Singular values of W^T yy W with rho = W W^H, via Eigen's SVD. Avoids the
// square root of tiny eigenvalues, so it is accurate to round-off.
inline double reference_concurrence(const ComplexMatrix &rho) {
    Eigen::SelfAdjointEigenSolver<EMat> es(to_eigen(rho));
    EMat w = es.eigenvectors();
    for (int k = 0; k < 4; ++k) w.col(k) *= std::sqrt(std::max(es.eigenvalues()(k), 0.0));
    const EMat tau = w.transpose() * sigma_yy() * w;
    Eigen::JacobiSVD<EMat> svd(tau);
    const auto s = svd.singularValues();
    return std::clamp(s(0) - s(1) - s(2) - s(3), 0.0, 1.0);
}

inline Vec3 random_unit(std::mt19937_64 &rng) {
    std::normal_distribution<double> z(0.0, 1.0);
    Vec3 v{z(rng), z(rng), z(rng)};
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (auto &c : v) c /= n;
    return v;
}

inline BellDirections random_directions(std::mt19937_64 &rng) {
    return {random_unit(rng), random_unit(rng), random_unit(rng), random_unit(rng)};
}

} // namespace spinent::reference
