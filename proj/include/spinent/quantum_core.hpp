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
 * @file quantum_core.hpp
 * Dense complex matrices, a cyclic Jacobi Hermitian eigensolver, partial
 * traces and spin-1/2 operators.
 *
 * Basis convention: site/qubit 0 is the leftmost tensor factor, and the
 * computational basis of two qubits is ordered |00>, |01>, |10>, |11>
 * with |0> the S^z = +1/2 state.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "error.hpp"

namespace spinent {

using complex_t = std::complex<double>;

/// Row-major dense complex matrix.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    ComplexMatrix(std::size_t rows, std::size_t cols,
                  std::vector<complex_t> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) {
            throw Error(ErrorKind::DimensionMismatch,
                        "entry count does not match rows*cols");
        }
    }

    /// Square matrix from nested rows, mostly for literals in tests.
    ComplexMatrix(std::initializer_list<std::initializer_list<complex_t>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorKind::DimensionMismatch, "ragged rows");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    static ComplexMatrix diagonal(std::span<const double> values) {
        ComplexMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
        return m;
    }

    /// |v><v| for a column vector v.
    static ComplexMatrix projector(std::span<const complex_t> v) {
        ComplexMatrix m(v.size(), v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                m(i, j) = v[i] * std::conj(v[j]);
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    [[nodiscard]] bool is_square() const noexcept { return rows_ == cols_; }

    complex_t &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const complex_t &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    [[nodiscard]] std::span<const complex_t> data() const noexcept {
        return data_;
    }

    [[nodiscard]] ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    [[nodiscard]] ComplexMatrix conjugate() const {
        ComplexMatrix out(*this);
        for (auto &z : out.data_) z = std::conj(z);
        return out;
    }

    [[nodiscard]] complex_t trace() const {
        complex_t t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i)
            t += (*this)(i, i);
        return t;
    }

    [[nodiscard]] double frobenius_norm() const {
        double s = 0.0;
        for (const auto &z : data_) s += std::norm(z);
        return std::sqrt(s);
    }

    [[nodiscard]] double max_abs_diff(const ComplexMatrix &other) const {
        check_same_shape(other);
        double m = 0.0;
        for (std::size_t k = 0; k < data_.size(); ++k)
            m = std::max(m, std::abs(data_[k] - other.data_[k]));
        return m;
    }

    [[nodiscard]] bool is_hermitian(double tol = 1e-12) const {
        if (!is_square()) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = i; j < cols_; ++j)
                if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
                    return false;
        return true;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
        return *this;
    }
    ComplexMatrix &operator-=(const ComplexMatrix &o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
        return *this;
    }
    ComplexMatrix &operator*=(complex_t s) {
        for (auto &z : data_) z *= s;
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        return a += b;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        return a -= b;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, complex_t s) {
        return a *= s;
    }
    friend ComplexMatrix operator*(complex_t s, ComplexMatrix a) {
        return a *= s;
    }

    friend ComplexMatrix operator*(const ComplexMatrix &a,
                                   const ComplexMatrix &b) {
        if (a.cols_ != b.rows_) {
            throw Error(ErrorKind::DimensionMismatch,
                        "matrix product with incompatible shapes");
        }
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const complex_t aik = a(i, k);
                if (aik == complex_t{}) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    out(i, j) += aik * b(k, j);
            }
        return out;
    }

    /// Matrix-vector product.
    [[nodiscard]] std::vector<complex_t>
    apply(std::span<const complex_t> v) const {
        if (v.size() != cols_) {
            throw Error(ErrorKind::DimensionMismatch,
                        "vector length does not match matrix");
        }
        std::vector<complex_t> out(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                out[i] += (*this)(i, j) * v[j];
        return out;
    }

  private:
    void check_same_shape(const ComplexMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw Error(ErrorKind::DimensionMismatch, "shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<complex_t> data_;
};

/// Kronecker product; a is the left (more significant) factor.
inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const complex_t aij = a(i, j);
            if (aij == complex_t{}) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
        }
    return out;
}

enum class Axis { x, y, z };

namespace pauli {
inline ComplexMatrix identity() { return ComplexMatrix::identity(2); }
inline ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
inline ComplexMatrix y() {
    return {{0.0, complex_t(0.0, -1.0)}, {complex_t(0.0, 1.0), 0.0}};
}
inline ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
inline ComplexMatrix of(Axis axis) {
    switch (axis) {
    case Axis::x: return x();
    case Axis::y: return y();
    case Axis::z: return z();
    }
    return identity();
}
} // namespace pauli

/// Eigenvalues ascending, eigenvectors stored as matrix columns.
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    [[nodiscard]] std::vector<complex_t> vector(std::size_t k) const {
        std::vector<complex_t> v(eigenvectors.rows());
        for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, k);
        return v;
    }
};

inline constexpr std::size_t max_eigen_dimension = 4096;

/// Cyclic Jacobi diagonalization of a Hermitian matrix.
///
/// Sweeps until the off-diagonal Frobenius norm drops below
/// 1e-13 * ||A||_F (at most 100 sweeps). A rotation is only applied to a
/// nonzero off-diagonal entry, so exact block structure in the input (for
/// instance fixed-S^z sectors) is preserved in the eigenvectors.
inline EigenDecomposition hermitian_eig(const ComplexMatrix &input) {
    if (!input.is_square() || input.rows() == 0) {
        throw Error(ErrorKind::DimensionMismatch,
                    "eigensolver needs a non-empty square matrix");
    }
    const std::size_t n = input.rows();
    if (n > max_eigen_dimension) {
        throw Error(ErrorKind::DimensionTooLarge,
                    "dimension " + std::to_string(n) + " exceeds " +
                        std::to_string(max_eigen_dimension));
    }
    if (!input.is_hermitian(1e-12)) {
        throw Error(ErrorKind::NotHermitian, "input is not Hermitian");
    }

    // Work on the exactly Hermitian part.
    ComplexMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = input(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const complex_t h = 0.5 * (input(i, j) + std::conj(input(j, i)));
            a(i, j) = h;
            a(j, i) = std::conj(h);
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double norm = a.frobenius_norm();
    const double threshold = 1e-13 * norm;
    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * std::norm(a(i, j));
        return std::sqrt(s);
    };

    constexpr int max_sweeps = 100;
    int sweep = 0;
    for (; sweep < max_sweeps && off_norm() > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complex_t apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const complex_t phase = apq / mag; // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // U restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
                const complex_t upp = c;
                const complex_t upq = s;
                const complex_t uqp = -s * std::conj(phase);
                const complex_t uqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const complex_t akp = a(k, p);
                    const complex_t akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const complex_t apk = a(p, k);
                    const complex_t aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * mag;
                a(q, q) = aqq + t * mag;
                for (std::size_t k = 0; k < n; ++k) {
                    const complex_t vkp = v(k, p);
                    const complex_t vkq = v(k, q);
                    v(k, p) = vkp * upp + vkq * uqp;
                    v(k, q) = vkp * upq + vkq * uqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.eigenvalues[k] = a(src, src).real();
        complex_t fix = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double mag = std::abs(v(i, src));
            if (mag > 1e-12) {
                fix = std::conj(v(i, src)) / mag;
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, src) * fix;
    }
    return out;
}

/// Reduced density matrix over the subsystems listed in `keep` (any order;
/// the result orders kept factors ascending by index).
inline ComplexMatrix partial_trace(const ComplexMatrix &rho,
                                   std::span<const std::size_t> dims,
                                   std::span<const std::size_t> keep) {
    if (!rho.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, "density matrix must be square");
    }
    std::size_t total = 1;
    for (auto d : dims) {
        if (d == 0) throw Error(ErrorKind::DimensionMismatch, "zero subsystem dimension");
        total *= d;
    }
    if (total != rho.rows()) {
        throw Error(ErrorKind::DimensionMismatch,
                    "product of subsystem dims " + std::to_string(total) +
                        " != matrix dimension " + std::to_string(rho.rows()));
    }
    std::vector<bool> kept(dims.size(), false);
    for (auto k : keep) {
        if (k >= dims.size() || kept[k]) {
            throw Error(ErrorKind::DimensionMismatch, "invalid keep index set");
        }
        kept[k] = true;
    }

    const std::size_t m = dims.size();
    // Row-major strides: the leftmost factor is most significant.
    std::vector<std::size_t> stride(m, 1);
    for (std::size_t s = m; s-- > 1;) stride[s - 1] = stride[s] * dims[s];

    std::vector<std::size_t> kept_idx, traced_idx;
    std::size_t kept_dim = 1, traced_dim = 1;
    for (std::size_t s = 0; s < m; ++s) {
        if (kept[s]) {
            kept_idx.push_back(s);
            kept_dim *= dims[s];
        } else {
            traced_idx.push_back(s);
            traced_dim *= dims[s];
        }
    }

    // Offset in the full space contributed by a mixed-radix index over a subset.
    auto offset = [&](std::size_t index, const std::vector<std::size_t> &subset) {
        std::size_t off = 0;
        for (std::size_t k = subset.size(); k-- > 0;) {
            const std::size_t s = subset[k];
            off += (index % dims[s]) * stride[s];
            index /= dims[s];
        }
        return off;
    };

    std::vector<std::size_t> kept_off(kept_dim), traced_off(traced_dim);
    for (std::size_t i = 0; i < kept_dim; ++i) kept_off[i] = offset(i, kept_idx);
    for (std::size_t t = 0; t < traced_dim; ++t) traced_off[t] = offset(t, traced_idx);

    ComplexMatrix out(kept_dim, kept_dim);
    for (std::size_t i = 0; i < kept_dim; ++i)
        for (std::size_t j = 0; j < kept_dim; ++j) {
            complex_t sum = 0.0;
            for (std::size_t t = 0; t < traced_dim; ++t)
                sum += rho(kept_off[i] + traced_off[t], kept_off[j] + traced_off[t]);
            out(i, j) = sum;
        }
    return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix &rho,
                                   std::initializer_list<std::size_t> dims,
                                   std::initializer_list<std::size_t> keep) {
    return partial_trace(rho, std::span<const std::size_t>(dims.begin(), dims.size()),
                         std::span<const std::size_t>(keep.begin(), keep.size()));
}

inline constexpr std::size_t max_spin_sites = 12;

/// S^axis = sigma_axis / 2 acting on `site` of an n-site spin-1/2 register.
inline ComplexMatrix spin_operator(Axis axis, std::size_t site, std::size_t n_sites) {
    if (n_sites > max_spin_sites) {
        throw Error(ErrorKind::TooManySites,
                    std::to_string(n_sites) + " sites exceeds the cap of " +
                        std::to_string(max_spin_sites));
    }
    if (site >= n_sites) {
        throw Error(ErrorKind::SiteOutOfRange,
                    "site " + std::to_string(site) + " not in [0, " +
                        std::to_string(n_sites) + ")");
    }
    ComplexMatrix out = ComplexMatrix::identity(1);
    for (std::size_t s = 0; s < n_sites; ++s) {
        out = kron(out, s == site ? pauli::of(axis) * complex_t(0.5)
                                  : pauli::identity());
    }
    return out;
}

/// Re tr(rho * op) for Hermitian arguments.
inline double expectation(const ComplexMatrix &rho, const ComplexMatrix &op) {
    if (!rho.is_square() || rho.rows() != op.rows() || !op.is_square()) {
        throw Error(ErrorKind::DimensionMismatch, "expectation shape mismatch");
    }
    complex_t t = 0.0;
    for (std::size_t i = 0; i < rho.rows(); ++i)
        for (std::size_t k = 0; k < rho.cols(); ++k) t += rho(i, k) * op(k, i);
    return t.real();
}

} // namespace spinent
