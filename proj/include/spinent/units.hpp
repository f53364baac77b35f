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
 * @file units.hpp
 * Physical constants. Temperatures in K, exchange as J/k_B in K,
 * susceptibility in muB per formula unit per Oe.
 */
#pragma once

namespace spinent::units {

/// Bohr magneton over Boltzmann constant (CODATA 2018), in K/Oe.
inline constexpr double mu_b_over_k_b = 0.67171381563e-4;

/// (g mu_B)^2 / k_B in muB K / Oe: converts reduced x = k_B T chi/(g mu_B)^2
/// to chi via chi = prefactor * x / T.
constexpr double chi_prefactor(double g) noexcept {
    return g * g * mu_b_over_k_b;
}

inline constexpr double sqrt2 = 1.41421356237309504880;

} // namespace spinent::units
