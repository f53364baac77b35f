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
 * @file dimer_model.hpp
 * Closed-form thermodynamics of an exchange-coupled spin-1/2 dimer with a
 * Curie-law monomer background.
 *
 * Hamiltonian convention: H = -J S1.S2, so J < 0 is antiferromagnetic and
 * the singlet lies |J| below the triplet. With this sign the low-field
 * dimer susceptibility is
 *   chi_d = (g mu_B)^2 / (k_B T) * 2 / (3 + exp(-J / k_B T)).
 *
 * Most functions work with the reduced dimer susceptibility
 *   x(T) = k_B T chi_d / (g mu_B)^2 = 2 / (3 + exp(-J / k_B T)),
 * which lies in (0, 1/2] for J <= 0.
 */
#pragma once

#include <cmath>
#include <functional>
#include <numbers>

#include "error.hpp"
#include "two_qubit.hpp"
#include "units.hpp"

namespace spinent {

struct ModelParams {
    double j_over_kb = -693.15; ///< K, negative = antiferromagnetic
    double g = 2.21;
    double curie_c = 7.02e-5;   ///< K muB / (FU Oe)
    int n_spins = 3;            ///< witness N
    double spin = 0.5;          ///< witness S

    /// Fitted values for the copper carboxylate dimer/monomer chain.
    static ModelParams reference() { return {}; }

    friend bool operator==(const ModelParams &, const ModelParams &) = default;

    void validate() const {
        if (!std::isfinite(j_over_kb)) {
            throw Error(ErrorKind::InvalidParams, "J/k_B must be finite");
        }
        if (!(g > 0.0) || !std::isfinite(g)) {
            throw Error(ErrorKind::InvalidParams, "g must be > 0");
        }
        if (!(curie_c >= 0.0) || !std::isfinite(curie_c)) {
            throw Error(ErrorKind::InvalidParams, "Curie constant must be >= 0");
        }
        if (n_spins < 1) {
            throw Error(ErrorKind::InvalidParams, "n_spins must be >= 1");
        }
        const double twice = 2.0 * spin;
        if (!(spin > 0.0) || std::abs(twice - std::round(twice)) > 1e-12) {
            throw Error(ErrorKind::InvalidParams, "spin must be a positive half-integer");
        }
    }
};

/// x(T) = 2 / (3 + e^{-J/T}); for -J/T > 700 uses x = 2 e^{J/T}.
inline double reduced_chi_dimer(double j_over_kb, double temperature) {
    require_positive_temperature(temperature);
    const double a = -j_over_kb / temperature;
    if (a > 700.0) return 2.0 * std::exp(-a);
    return 2.0 / (3.0 + std::exp(a));
}

/// k_B C / (g mu_B)^2: the monomer term in the same reduced units as x(T).
inline double reduced_curie(const ModelParams &p) {
    return p.curie_c / units::chi_prefactor(p.g);
}

inline double chi_dimer(const ModelParams &p, double temperature) {
    return units::chi_prefactor(p.g) * reduced_chi_dimer(p.j_over_kb, temperature) /
           temperature;
}

inline double chi_monomer(const ModelParams &p, double temperature) {
    require_positive_temperature(temperature);
    return p.curie_c / temperature;
}

inline double chi_total(const ModelParams &p, double temperature) {
    return chi_dimer(p, temperature) + chi_monomer(p, temperature);
}

/// Singlet and (per-state) triplet Boltzmann weights, K/(3+K) and 1/(3+K)
/// with K = e^{-J/T}.
struct DimerPopulations {
    double singlet;
    double triplet;
};

inline DimerPopulations dimer_populations(double j_over_kb, double temperature) {
    const double x = reduced_chi_dimer(j_over_kb, temperature);
    const double a = -j_over_kb / temperature;
    return {1.0 / (1.0 + 3.0 * std::exp(-a)), 0.5 * x};
}

/// rho_d = e^{-H/T} / Z in the computational basis.
inline TwoQubitState thermal_dimer_state(const ModelParams &p, double temperature) {
    const auto [ps, pt] = dimer_populations(p.j_over_kb, temperature);
    ComplexMatrix rho(4, 4);
    rho(0, 0) = pt;
    rho(3, 3) = pt;
    rho(1, 1) = 0.5 * (ps + pt);
    rho(2, 2) = 0.5 * (ps + pt);
    rho(1, 2) = 0.5 * (pt - ps);
    rho(2, 1) = 0.5 * (pt - ps);
    // Re-normalize so the trace is 1 to machine precision.
    const double tr = rho.trace().real();
    return TwoQubitState(rho * complex_t(1.0 / tr));
}

/// C = max(0, 1 - 6 / (3 + e^{-J/T})) = max(0, 1 - 3x).
inline double concurrence_closed(const ModelParams &p, double temperature) {
    return std::max(0.0, 1.0 - 3.0 * reduced_chi_dimer(p.j_over_kb, temperature));
}

/// Reduced dimer susceptibility recovered from a measured total chi by
/// subtracting the Curie term.
inline double reduced_dimer_from_chi(double chi, double temperature,
                                     const ModelParams &p) {
    require_positive_temperature(temperature);
    return (temperature * chi - p.curie_c) / units::chi_prefactor(p.g);
}

inline double concurrence_from_chi(double chi, double temperature,
                                   const ModelParams &p) {
    return std::max(0.0, 1.0 - 3.0 * reduced_dimer_from_chi(chi, temperature, p));
}

/// |<B>| = 4 sqrt2 |x - 1/2| for the optimal direction set.
inline double bell_closed(const ModelParams &p, double temperature) {
    return 4.0 * units::sqrt2 *
           std::abs(reduced_chi_dimer(p.j_over_kb, temperature) - 0.5);
}

inline double bell_from_chi(double chi, double temperature, const ModelParams &p) {
    return 4.0 * units::sqrt2 *
           std::abs(reduced_dimer_from_chi(chi, temperature, p) - 0.5);
}

/// Witness evaluated on the model susceptibility.
inline double witness_model(const ModelParams &p, double temperature) {
    return witness_from_chi(chi_total(p, temperature), temperature, p.g, p.n_spins,
                            p.spin);
}

struct ThresholdSet {
    double t_entanglement;  ///< concurrence reaches 0
    double t_bell;          ///< |<B>| = 2
    double t_plateau;       ///< concurrence = 1 - epsilon
    double plateau_epsilon;
    /// Largest |closed form - bisection root| over the three thresholds, K.
    double max_bisection_gap;
};

/// Root of an increasing-then-crossing function f on (0, inf) by bisection,
/// starting from f(lo) < 0 < f(hi) after expanding the bracket geometrically.
inline double bisect_root(const std::function<double(double)> &f, double lo,
                          double hi, double tol = 1e-9) {
    while (f(lo) >= 0.0 && lo > 1e-300) lo *= 0.5;
    while (f(hi) <= 0.0 && hi < 1e300) hi *= 2.0;
    for (int it = 0; it < 400 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) < 0.0) lo = mid; else hi = mid;
    }
    return 0.5 * (lo + hi);
}

/// Critical temperatures of an antiferromagnetic dimer:
///   T_e = -J / ln 3, T_Bell = -J / ln(5 + 4 sqrt2), T_plateau = -J / ln(6/eps - 3).
/// Each is cross-checked by bisection on the corresponding curve.
inline ThresholdSet thresholds(const ModelParams &p, double plateau_epsilon = 0.01) {
    if (!(p.j_over_kb < 0.0)) {
        throw Error(ErrorKind::NotAntiferromagnetic,
                    "thresholds need J/k_B < 0; no entanglement at any temperature");
    }
    if (!(plateau_epsilon > 0.0 && plateau_epsilon < 1.0)) {
        throw Error(ErrorKind::InvalidParams, "plateau epsilon must be in (0, 1)");
    }
    const double j = -p.j_over_kb;
    ThresholdSet out{};
    out.plateau_epsilon = plateau_epsilon;
    out.t_entanglement = j / std::log(3.0);
    out.t_bell = j / std::log(5.0 + 4.0 * units::sqrt2);
    out.t_plateau = j / std::log(6.0 / plateau_epsilon - 3.0);

    // The curves below are increasing in T (x(T) increases for J < 0).
    auto x = [&](double t) { return reduced_chi_dimer(p.j_over_kb, t); };
    const double te = bisect_root([&](double t) { return 3.0 * x(t) - 1.0; }, 1.0, j);
    const double tb = bisect_root(
        [&](double t) { return 2.0 - 4.0 * units::sqrt2 * (0.5 - x(t)); }, 1.0, j);
    const double tp = bisect_root(
        [&](double t) { return 3.0 * x(t) - plateau_epsilon; }, 1.0, j);
    out.max_bisection_gap = std::max({std::abs(te - out.t_entanglement),
                                      std::abs(tb - out.t_bell),
                                      std::abs(tp - out.t_plateau)});
    return out;
}

} // namespace spinent
