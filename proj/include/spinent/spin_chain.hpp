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
 * @file spin_chain.hpp
 * Exact diagonalization of small spin-1/2 Heisenberg clusters,
 * H = -sum_bonds J_ij S_i.S_j (energies in K), used as a brute-force
 * reference for the closed-form dimer expressions.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "quantum_core.hpp"
#include "two_qubit.hpp"
#include "units.hpp"

namespace spinent {

struct Bond {
    std::size_t site_i;
    std::size_t site_j;
    double j_over_kb; ///< K
};

struct SpinChainSpec {
    std::size_t n_sites = 0;
    std::vector<Bond> bonds;
    std::vector<double> g_factors;

    void validate() const {
        if (n_sites == 0) throw Error(ErrorKind::InvalidSpec, "need at least one site");
        if (n_sites > max_spin_sites) {
            throw Error(ErrorKind::TooManySites,
                        std::to_string(n_sites) + " sites exceeds the cap of " +
                            std::to_string(max_spin_sites));
        }
        if (g_factors.size() != n_sites) {
            throw Error(ErrorKind::InvalidSpec, "need one g factor per site");
        }
        std::set<std::pair<std::size_t, std::size_t>> seen;
        for (const auto &b : bonds) {
            if (b.site_i >= n_sites || b.site_j >= n_sites || b.site_i == b.site_j) {
                throw Error(ErrorKind::InvalidSpec, "bond sites must be distinct and in range");
            }
            if (!seen.insert(std::minmax(b.site_i, b.site_j)).second) {
                throw Error(ErrorKind::InvalidSpec, "duplicate bond");
            }
        }
    }

    [[nodiscard]] std::size_t dimension() const { return std::size_t{1} << n_sites; }

    static SpinChainSpec dimer(double j_over_kb, double g) {
        return {2, {{0, 1, j_over_kb}}, {g, g}};
    }

    /// Dimer (0,1) plus a monomer at site 2 coupled to site 1 with J'.
    static SpinChainSpec trimer(double j_over_kb, double j_prime_over_kb, double g) {
        SpinChainSpec s{3, {{0, 1, j_over_kb}}, {g, g, g}};
        if (j_prime_over_kb != 0.0) s.bonds.push_back({1, 2, j_prime_over_kb});
        return s;
    }
};

namespace detail {
// Site s occupies bit (n-1-s) so site 0 is the leftmost tensor factor;
// bit value 0 is spin up.
inline bool spin_down(std::size_t state, std::size_t site, std::size_t n) {
    return (state >> (n - 1 - site)) & 1U;
}
inline std::size_t site_mask(std::size_t site, std::size_t n) {
    return std::size_t{1} << (n - 1 - site);
}
} // namespace detail

/// Dense H = -sum J_ij (Sz Sz + (S+S- + S-S+)/2), built directly on basis bits.
inline ComplexMatrix build_hamiltonian(const SpinChainSpec &spec) {
    spec.validate();
    const std::size_t n = spec.n_sites;
    const std::size_t dim = spec.dimension();
    ComplexMatrix h(dim, dim);
    for (const auto &b : spec.bonds) {
        const std::size_t flip = detail::site_mask(b.site_i, n) | detail::site_mask(b.site_j, n);
        for (std::size_t s = 0; s < dim; ++s) {
            const bool same = detail::spin_down(s, b.site_i, n) == detail::spin_down(s, b.site_j, n);
            h(s, s) += -b.j_over_kb * (same ? 0.25 : -0.25);
            if (!same) h(s ^ flip, s) += -b.j_over_kb * 0.5;
        }
    }
    return h;
}

/// Total S^z eigenvalue of each computational basis state.
inline std::vector<double> total_sz_diagonal(std::size_t n_sites) {
    std::vector<double> m(std::size_t{1} << n_sites);
    for (std::size_t s = 0; s < m.size(); ++s) {
        double total = 0.0;
        for (std::size_t site = 0; site < n_sites; ++site)
            total += detail::spin_down(s, site, n_sites) ? -0.5 : 0.5;
        m[s] = total;
    }
    return m;
}

/// Eigenbasis of a cluster Hamiltonian, computed once and shared by every
/// temperature. Immutable after construction, so concurrent const use is safe.
class SpinChainOracle {
  public:
    explicit SpinChainOracle(SpinChainSpec spec, double energy_shift = 0.0)
        : spec_(std::move(spec)) {
        ComplexMatrix h = build_hamiltonian(spec_);
        if (energy_shift != 0.0) h += ComplexMatrix::identity(h.rows()) * complex_t(energy_shift);
        hamiltonian_ = std::move(h);
        eig_ = hermitian_eig(hamiltonian_);
    }

    [[nodiscard]] const SpinChainSpec &spec() const noexcept { return spec_; }
    [[nodiscard]] const ComplexMatrix &hamiltonian() const noexcept { return hamiltonian_; }
    [[nodiscard]] const EigenDecomposition &eigen() const noexcept { return eig_; }

    /// Boltzmann weights from energies relative to the ground state.
    [[nodiscard]] std::vector<double> weights(double temperature) const {
        require_positive_temperature(temperature);
        const double e0 = eig_.eigenvalues.front();
        std::vector<double> w(eig_.eigenvalues.size());
        double z = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            w[k] = std::exp(-(eig_.eigenvalues[k] - e0) / temperature);
            z += w[k];
        }
        for (auto &wk : w) wk /= z;
        return w;
    }

    [[nodiscard]] ComplexMatrix thermal_state(double temperature) const {
        const auto w = weights(temperature);
        const std::size_t dim = w.size();
        const ComplexMatrix &v = eig_.eigenvectors;
        ComplexMatrix rho(dim, dim);
        for (std::size_t k = 0; k < dim; ++k) {
            if (w[k] == 0.0) continue;
            for (std::size_t i = 0; i < dim; ++i) {
                const complex_t vik = w[k] * v(i, k);
                if (vik == complex_t{}) continue;
                for (std::size_t j = 0; j < dim; ++j) rho(i, j) += vik * std::conj(v(j, k));
            }
        }
        return rho;
    }

    [[nodiscard]] double internal_energy(double temperature) const {
        const auto w = weights(temperature);
        double e = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) e += w[k] * eig_.eigenvalues[k];
        return e;
    }

    /// Zero-field chi = (g mu_B)^2 / (k_B T) (<M^2> - <M>^2), M = sum_i S_i^z.
    [[nodiscard]] double fluctuation_susceptibility(double temperature) const {
        const double g = spec_.g_factors.front();
        for (double gi : spec_.g_factors) {
            if (gi != g) {
                throw Error(ErrorKind::NonUniformG,
                            "fluctuation susceptibility needs a uniform g factor");
            }
        }
        const auto w = weights(temperature);
        const auto m = total_sz_diagonal(spec_.n_sites);
        const ComplexMatrix &v = eig_.eigenvectors;
        double mean = 0.0, mean_sq = 0.0;
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (w[k] == 0.0) continue;
            double mk = 0.0, mk2 = 0.0;
            for (std::size_t b = 0; b < m.size(); ++b) {
                const double p = std::norm(v(b, k));
                mk += p * m[b];
                mk2 += p * m[b] * m[b];
            }
            mean += w[k] * mk;
            mean_sq += w[k] * mk2;
        }
        return units::chi_prefactor(g) * (mean_sq - mean * mean) / temperature;
    }

    [[nodiscard]] ComplexMatrix pair_state(double temperature, std::size_t a,
                                           std::size_t b) const {
        if (a >= spec_.n_sites || b >= spec_.n_sites || a == b) {
            throw Error(ErrorKind::SiteOutOfRange, "invalid site pair");
        }
        const std::vector<std::size_t> dims(spec_.n_sites, 2);
        const std::size_t keep[2] = {std::min(a, b), std::max(a, b)};
        return partial_trace(thermal_state(temperature), dims, keep);
    }

    [[nodiscard]] double pair_concurrence(double temperature, std::size_t a,
                                          std::size_t b) const {
        ComplexMatrix rho = pair_state(temperature, a, b);
        rho = (rho + rho.adjoint()) * complex_t(0.5);
        rho *= complex_t(1.0 / rho.trace().real());
        return concurrence(TwoQubitState(std::move(rho)));
    }

  private:
    SpinChainSpec spec_;
    ComplexMatrix hamiltonian_;
    EigenDecomposition eig_;
};

inline ComplexMatrix thermal_state(const SpinChainSpec &spec, double temperature) {
    require_positive_temperature(temperature);
    return SpinChainOracle(spec).thermal_state(temperature);
}

inline double fluctuation_susceptibility(const SpinChainSpec &spec, double temperature) {
    require_positive_temperature(temperature);
    return SpinChainOracle(spec).fluctuation_susceptibility(temperature);
}

inline double pair_concurrence(const SpinChainSpec &spec, double temperature,
                               std::pair<std::size_t, std::size_t> pair) {
    require_positive_temperature(temperature);
    return SpinChainOracle(spec).pair_concurrence(temperature, pair.first, pair.second);
}

} // namespace spinent
