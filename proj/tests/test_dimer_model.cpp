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

#include <gtest/gtest.h>

#include <cmath>

#include "spinent/dimer_model.hpp"

using namespace spinent;

namespace {

const ModelParams ref_params = ModelParams::reference();

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> t;
    for (int i = 0; i < n; ++i) t.push_back(lo * std::pow(hi / lo, i / double(n - 1)));
    return t;
}

ModelParams with_j(double j) {
    ModelParams p = ref_params;
    p.j_over_kb = j;
    return p;
}

} // namespace

TEST(ModelParams, ReferenceValues) {
    EXPECT_EQ(ref_params.j_over_kb, -693.15);
    EXPECT_EQ(ref_params.g, 2.21);
    EXPECT_EQ(ref_params.curie_c, 7.02e-5);
    EXPECT_NO_THROW(ref_params.validate());
    ModelParams bad = ref_params;
    bad.g = 0.0;
    EXPECT_THROW(bad.validate(), Error);
    bad = ref_params;
    bad.spin = 0.7;
    EXPECT_THROW(bad.validate(), Error);
}

TEST(ChiDimer, UncoupledIsOneHalf) {
    for (double t : {1.0, 10.0, 1000.0}) EXPECT_DOUBLE_EQ(reduced_chi_dimer(0.0, t), 0.5);
}

TEST(ChiDimer, OneThirdAtEntanglementTemperature) {
    const double te = 693.15 / std::log(3.0);
    EXPECT_NEAR(reduced_chi_dimer(-693.15, te), 1.0 / 3.0, 1e-15);
    // 630.93 K is the rounded value.
    EXPECT_NEAR(reduced_chi_dimer(-693.15, 630.93), 0.33333266006513413, 1e-14);
}

TEST(ChiDimer, At100K) {
    // 693.15/100 is close to 10 ln 2, so x ~ 2/1027.
    EXPECT_NEAR(reduced_chi_dimer(-693.15, 100.0), 0.0019473649237642268, 1e-17);
    EXPECT_NEAR(reduced_chi_dimer(-693.15, 100.0), 2.0 / 1027.0, 1e-7);
}

TEST(ChiDimer, OverflowGuard) {
    // -J/T = 1000: the naive expression overflows exp.
    const double x = reduced_chi_dimer(-1000.0, 1.0);
    EXPECT_TRUE(std::isfinite(x));
    EXPECT_DOUBLE_EQ(x, 2.0 * std::exp(-1000.0));
    EXPECT_NEAR(reduced_chi_dimer(-700.1, 1.0) / (2.0 * std::exp(-700.1)), 1.0, 1e-15);
    EXPECT_TRUE(std::isfinite(chi_dimer(ref_params, 0.01)));
}

TEST(ChiDimer, PrefactorAndErrors) {
    const double t = 300.0;
    EXPECT_DOUBLE_EQ(chi_dimer(ref_params, t),
                     ref_params.g * ref_params.g * units::mu_b_over_k_b * reduced_chi_dimer(ref_params.j_over_kb, t) / t);
    EXPECT_THROW(chi_dimer(ref_params, 0.0), Error);
    EXPECT_THROW(chi_dimer(ref_params, -5.0), Error);
}

TEST(ChiMonomer, CurieLaw) {
    ModelParams p = ref_params;
    EXPECT_NEAR(chi_monomer(p, 300.0), 2.34e-7, 1e-20);
    EXPECT_NEAR(chi_monomer(p, 70.2), 1.0e-6, 1e-19);
    p.curie_c = 0.0;
    EXPECT_EQ(chi_monomer(p, 12.0), 0.0);
    EXPECT_THROW(chi_monomer(p, 0.0), Error);
}

TEST(ChiTotal, Superposition) {
    ModelParams no_c = ref_params;
    no_c.curie_c = 0.0;
    EXPECT_EQ(chi_total(no_c, 123.0), chi_dimer(no_c, 123.0));
    const ModelParams free = with_j(0.0);
    EXPECT_NEAR(chi_total(free, 40.0),
                units::chi_prefactor(free.g) / (2.0 * 40.0) + free.curie_c / 40.0, 1e-18);
}

TEST(ChiTotal, ReducedUnitsAt300K) {
    EXPECT_NEAR(reduced_chi_dimer(ref_params.j_over_kb, 300.0), 0.15291147508139705, 1e-15);
    EXPECT_NEAR(reduced_curie(ref_params), 0.21397758610982350, 1e-15);
    EXPECT_NEAR(300.0 * chi_total(ref_params, 300.0) / units::chi_prefactor(ref_params.g),
                0.15291147508139705 + 0.21397758610982350, 1e-14);
}

TEST(ThermalDimerState, Limits) {
    const auto hot = thermal_dimer_state(ref_params, 1e12);
    EXPECT_LT(hot.rho().max_abs_diff(ComplexMatrix::identity(4) * complex_t(0.25)), 1e-9);
    const auto cold = thermal_dimer_state(ref_params, 1.0);
    const double h = 1.0 / std::sqrt(2.0);
    const std::vector<complex_t> s{0.0, h, -h, 0.0};
    EXPECT_LT(cold.rho().max_abs_diff(ComplexMatrix::projector(s)), 1e-15);
}

TEST(ThermalDimerState, FluctuationSusceptibilityMatchesClosedForm) {
    const std::vector<double> m2{1.0, 0.0, 0.0, 1.0};
    const std::vector<double> m1{1.0, 0.0, 0.0, -1.0};
    for (double t : {50.0, 300.0, 1000.0}) {
        const auto s = thermal_dimer_state(ref_params, t);
        const double mean = expectation(s.rho(), ComplexMatrix::diagonal(m1));
        const double var = expectation(s.rho(), ComplexMatrix::diagonal(m2)) - mean * mean;
        const double chi = units::chi_prefactor(ref_params.g) * var / t;
        EXPECT_NEAR(chi / chi_dimer(ref_params, t), 1.0, 1e-10) << "T=" << t;
    }
}

TEST(ConcurrenceClosed, Examples) {
    const double te = 693.15 / std::log(3.0);
    EXPECT_NEAR(concurrence_closed(ref_params, te), 0.0, 1e-15);
    EXPECT_NEAR(concurrence_closed(ref_params, 100.0), 0.99415790522870732, 1e-14);
    EXPECT_NEAR(concurrence_closed(ref_params, 100.0), 1.0 - 6.0 / 1027.0, 1e-6);
    EXPECT_EQ(concurrence_closed(with_j(0.0), 100.0), 0.0);
    EXPECT_EQ(concurrence_closed(with_j(50.0), 10.0), 0.0);
}

TEST(ConcurrenceFromChi, Examples) {
    EXPECT_NEAR(concurrence_from_chi(chi_total(ref_params, 100.0), 100.0, ref_params), 0.99415790522870732, 1e-12);
    // A susceptibility that is pure Curie term leaves no dimer signal: clamped to 1.
    EXPECT_DOUBLE_EQ(concurrence_from_chi(ref_params.curie_c / 80.0, 80.0, ref_params), 1.0);
    const double t = 200.0;
    const double chi = units::chi_prefactor(ref_params.g) / (3.0 * t) + ref_params.curie_c / t;
    EXPECT_NEAR(concurrence_from_chi(chi, t, ref_params), 0.0, 1e-12);
}

TEST(BellClosed, Examples) {
    EXPECT_NEAR(bell_closed(ref_params, 0.5), 2.0 * std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(bell_closed(ref_params, 100.0), 2.8174111652018820, 1e-13);
    EXPECT_NEAR(bell_closed(ref_params, 292.9), 2.0, 5e-4);
    EXPECT_NEAR(bell_closed(ref_params, 292.93763847035772), 2.0, 1e-12);
}

TEST(BellFromChi, MirrorsClosedForm) {
    for (double t : {0.5, 100.0, 292.93763847035772})
        EXPECT_NEAR(bell_from_chi(chi_total(ref_params, t), t, ref_params), bell_closed(ref_params, t), 1e-12);
}

TEST(ChiForms, EquivalenceOnLogGrid) {
    for (double t : log_grid(1.0, 2000.0, 200)) {
        const double chi = chi_total(ref_params, t);
        EXPECT_NEAR(concurrence_from_chi(chi, t, ref_params), concurrence_closed(ref_params, t), 1e-12) << t;
        EXPECT_NEAR(bell_from_chi(chi, t, ref_params), bell_closed(ref_params, t), 1e-12) << t;
    }
}

TEST(Witness, PureDimerEqualsMinusConcurrence) {
    ModelParams p = ref_params;
    p.curie_c = 0.0;
    for (double t : log_grid(1.0, 2000.0, 200)) {
        const double ew = witness_from_chi(chi_dimer(p, t), t, p.g, 2, 0.5);
        const double c = concurrence_closed(p, t);
        if (c > 0.0) EXPECT_NEAR(ew, -c, 1e-12) << t;
        else EXPECT_GE(ew, -1e-12) << t;
    }
}

TEST(Witness, ModelNegativeAtRoomTemperature) {
    EXPECT_NEAR(witness_model(ref_params, 300.0), -0.27, 0.01);
}

TEST(Monotonicity, ReducedChiIncreasesForAntiferromagnet) {
    for (double j : {-50.0, -693.15, -1200.0}) {
        // Start where x is still representable (-J/T < 700).
        double prev = 0.0;
        for (double t : log_grid(-j / 690.0, 5000.0, 300)) {
            const double x = reduced_chi_dimer(j, t);
            EXPECT_GT(x, prev) << "J=" << j << " T=" << t;
            prev = x;
        }
    }
}

TEST(Monotonicity, ConcurrenceNonIncreasingAndBounded) {
    double prev = 1.0;
    for (double t : log_grid(1.0, 2000.0, 300)) {
        const double c = concurrence_closed(ref_params, t);
        EXPECT_LE(c, prev);
        EXPECT_GE(c, 0.0);
        EXPECT_LE(bell_closed(ref_params, t), 2.0 * std::sqrt(2.0) + 1e-15);
        prev = c;
    }
}

TEST(Oracle, TwoQubitConcurrenceOfThermalStateMatches) {
    for (double t : log_grid(2.0, 1500.0, 50))
        EXPECT_NEAR(concurrence(thermal_dimer_state(ref_params, t)), concurrence_closed(ref_params, t), 1e-10) << t;
}

TEST(Oracle, BellExpectationOfThermalStateMatches) {
    for (double t : log_grid(2.0, 1500.0, 50)) {
        const double b = bell_expectation(thermal_dimer_state(ref_params, t), BellDirections::dimer_optimal());
        EXPECT_NEAR(std::abs(b), bell_closed(ref_params, t), 1e-10) << t;
    }
}

TEST(Thresholds, ReferenceParameters) {
    const ThresholdSet th = thresholds(ref_params);
    EXPECT_NEAR(th.t_entanglement, 630.93231993639234, 1e-9);
    EXPECT_NEAR(th.t_entanglement, 630.9, 0.1);
    EXPECT_NEAR(th.t_bell, 292.93763847035772, 1e-9);
    EXPECT_NEAR(th.t_plateau, 108.44164398622820, 1e-9);
    EXPECT_EQ(th.plateau_epsilon, 0.01);
    EXPECT_LT(th.max_bisection_gap, 1e-6);
    // The defining equations hold at the roots.
    EXPECT_NEAR(concurrence_closed(ref_params, th.t_plateau), 0.99, 1e-12);
    EXPECT_NEAR(bell_closed(ref_params, th.t_bell), 2.0, 1e-12);
}

TEST(Thresholds, OrderingForAntiferromagnets) {
    for (double j : {-10.0, -300.0, -693.15, -2000.0})
        for (double eps : {1e-4, 0.01, 0.05, 0.1}) {
            const ThresholdSet th = thresholds(with_j(j), eps);
            EXPECT_LT(th.t_plateau, th.t_bell);
            EXPECT_LT(th.t_bell, th.t_entanglement);
            EXPECT_LT(th.max_bisection_gap, 1e-6);
        }
}

TEST(Thresholds, Errors) {
    for (double j : {0.0, 25.0}) {
        try {
            thresholds(with_j(j));
            FAIL();
        } catch (const Error &e) {
            EXPECT_EQ(e.kind(), ErrorKind::NotAntiferromagnetic);
        }
    }
    EXPECT_THROW(thresholds(ref_params, 0.0), Error);
    EXPECT_THROW(thresholds(ref_params, 1.0), Error);
}
