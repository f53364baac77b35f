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
 * @file commands.hpp
 * Drivers behind the `spinent` subcommands. Each returns a process exit
 * code and writes its artifact to `config.output` (or `out` when empty).
 *
 * Exit codes: 0 success, 1 usage error, 2 data error, 3 validation failure.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "dimer_model.hpp"
#include "io.hpp"
#include "spin_chain.hpp"
#include "suscept_fit.hpp"

namespace spinent::cli {

enum ExitCode : int {
    exit_ok = 0,
    exit_usage = 1,
    exit_data = 2,
    exit_validation = 3,
};

struct RunConfig {
    std::string command;
    std::optional<double> j_over_kb;
    std::optional<double> g;
    std::optional<double> curie_c;
    std::optional<int> n_spins;
    std::optional<double> spin;
    double epsilon = 0.01;
    std::optional<io::GridSpec> grid;
    std::string input;
    std::string output;
    std::uint64_t seed = 42;
    std::optional<double> field_oe;
    double noise_rel = 0.0;
    bool inject_fault = false;

    void validate() const {
        if (!(epsilon > 0.0 && epsilon < 1.0)) {
            throw Error(ErrorKind::InvalidParams, "--epsilon must be in (0, 1)");
        }
        if (grid) grid->validate();
        if (!(noise_rel >= 0.0)) throw Error(ErrorKind::InvalidParams, "--noise-rel must be >= 0");
    }
};

/// Applies flags over `base`.
inline ModelParams apply_flags(ModelParams base, const RunConfig &c) {
    if (c.j_over_kb) base.j_over_kb = *c.j_over_kb;
    if (c.g) base.g = *c.g;
    if (c.curie_c) base.curie_c = *c.curie_c;
    if (c.n_spins) base.n_spins = *c.n_spins;
    if (c.spin) base.spin = *c.spin;
    return base;
}

/// Reads `j_over_kb`, `g`, `curie_c`, `n_spins`, `spin` metadata if present.
inline ModelParams params_from_meta(ModelParams base, const io::Table &t) {
    if (auto v = t.meta_number("j_over_kb")) base.j_over_kb = *v;
    if (auto v = t.meta_number("g")) base.g = *v;
    if (auto v = t.meta_number("curie_c")) base.curie_c = *v;
    if (auto v = t.meta_number("n_spins")) base.n_spins = static_cast<int>(*v);
    if (auto v = t.meta_number("spin")) base.spin = *v;
    return base;
}

inline void append_params(std::string &out, const ModelParams &p, std::string_view prefix = "") {
    const std::string pre(prefix);
    out += "# " + pre + "j_over_kb=" + io::format_exact(p.j_over_kb) + "\n";
    out += "# " + pre + "g=" + io::format_exact(p.g) + "\n";
    out += "# " + pre + "curie_c=" + io::format_exact(p.curie_c) + "\n";
    if (prefix.empty()) {
        out += "# n_spins=" + std::to_string(p.n_spins) + "\n";
        out += "# spin=" + io::format_exact(p.spin) + "\n";
    }
}

inline void emit(const RunConfig &c, const std::string &text, std::ostream &out) {
    if (c.output.empty()) out << text;
    else io::write_file(c.output, text);
}

struct LoadedInput {
    io::Table table;
    std::string hash;
};

inline LoadedInput load_input(const std::string &path) {
    const std::string text = io::read_file(path);
    return {io::parse_table(text), io::fnv1a64_hex(text)};
}

/// Observations from a dataset file, or from an analyze report (its
/// `chi_data` column when present, otherwise `chi_model`).
inline SusceptibilityDataset observations_from(const io::Table &t) {
    if (io::is_dataset_header(t.header)) return io::dataset_from_table(t);
    if (t.header.rfind(io::report_header_prefix, 0) == 0) {
        const auto col = t.column("chi_data") ? t.column("chi_data") : t.column("chi_model");
        SusceptibilityDataset d;
        if (auto f = t.meta_number("field_Oe")) d.applied_field_oe = *f;
        d.label = "report";
        for (const auto &row : t.rows) d.points.push_back({row[0], row[*col], std::nullopt});
        if (d.points.empty()) throw Error(ErrorKind::EmptyDataset, "report has no rows");
        return d;
    }
    if (t.header.empty()) throw Error(ErrorKind::EmptyDataset, "input has no table");
    throw Error(ErrorKind::MalformedRow, "unrecognized table header '" + t.header + "'", 0);
}

inline void append_thresholds(std::string &out, const ModelParams &p, double epsilon,
                              std::ostream &err) {
    out += "# plateau_epsilon=" + io::format_exact(epsilon) + "\n";
    try {
        const ThresholdSet th = thresholds(p, epsilon);
        out += "# T_e_K=" + io::format_sci(th.t_entanglement) + "\n";
        out += "# T_Bell_K=" + io::format_sci(th.t_bell) + "\n";
        out += "# T_plateau_K=" + io::format_sci(th.t_plateau) + "\n";
        out += "# threshold_bisection_gap_K=" + io::format_sci(th.max_bisection_gap) + "\n";
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::NotAntiferromagnetic) throw;
        out += "# thresholds=absent\n";
        err << "warning: J/k_B >= 0 (not antiferromagnetic): thresholds absent\n";
    }
}

/// Model curves chi, EW, concurrence and |<B>| on a grid or at the data
/// temperatures, with the data-derived counterparts when data is given.
inline int run_analyze(const RunConfig &c, std::ostream &out, std::ostream &err) {
    c.validate();
    ModelParams params = ModelParams::reference();
    std::optional<SusceptibilityDataset> data;
    std::string hash = "none";
    if (!c.input.empty()) {
        LoadedInput in = load_input(c.input);
        hash = in.hash;
        params = params_from_meta(params, in.table);
        if (io::is_dataset_header(in.table.header) && !c.grid) {
            data = io::dataset_from_table(in.table);
        }
    }
    params = apply_flags(params, c);
    params.validate();

    std::vector<double> temps;
    if (data) {
        std::vector<ChiPoint> pts = data->points;
        std::stable_sort(pts.begin(), pts.end(), [](const ChiPoint &a, const ChiPoint &b) {
            return a.temperature < b.temperature;
        });
        data->points = pts;
        for (const auto &p : pts) temps.push_back(p.temperature);
    } else {
        temps = c.grid.value_or(io::GridSpec{}).values();
    }

    std::string text = "# spinent analyze\n# chi_units=muB_per_FU_Oe\n# command=analyze\n";
    text += "# input=" + (c.input.empty() ? std::string("none") : c.input) + "\n";
    text += "# input_fnv1a64=" + hash + "\n";
    if (!data) text += "# grid=" + c.grid.value_or(io::GridSpec{}).to_string() + "\n";
    append_params(text, params);
    const double field = c.field_oe.value_or(data ? data->applied_field_oe : 100.0);
    text += "# field_Oe=" + io::format_exact(field) + "\n";
    append_thresholds(text, params, c.epsilon, err);

    std::string table = "temperature_K,chi_model,EW_model,concurrence_model,bell_model";
    if (data) table += ",chi_data,EW_data,concurrence_data,bell_data";
    table += "\n";
    std::size_t suspicious = 0;
    for (std::size_t i = 0; i < temps.size(); ++i) {
        const double t = temps[i];
        const double chi = chi_total(params, t);
        std::vector<double> row{t, chi,
                                witness_from_chi(chi, t, params.g, params.n_spins, params.spin),
                                concurrence_closed(params, t), bell_closed(params, t)};
        if (data) {
            const double obs = data->points[i].chi;
            if (reduced_dimer_from_chi(obs, t, params) <= 0.0) ++suspicious;
            row.push_back(obs);
            row.push_back(witness_from_chi(obs, t, params.g, params.n_spins, params.spin));
            row.push_back(concurrence_from_chi(obs, t, params));
            row.push_back(bell_from_chi(obs, t, params));
        }
        for (std::size_t k = 0; k < row.size(); ++k) {
            if (!std::isfinite(row[k])) {
                throw Error(ErrorKind::InvalidParams,
                            "non-finite value at T=" + io::format_exact(t));
            }
            if (k) table += ',';
            table += io::format_sci(row[k]);
        }
        table += '\n';
    }
    if (data) {
        text += "# suspicious_rows=" + std::to_string(suspicious) + "\n";
        if (suspicious) {
            err << "warning: " << suspicious
                << " row(s) have chi <= C/T (no dimer signal); their concurrence is clamped\n";
        }
    }
    emit(c, text + table, out);
    return exit_ok;
}

inline int run_fit(const RunConfig &c, std::ostream &out, std::ostream &err) {
    c.validate();
    if (c.input.empty()) throw Error(ErrorKind::InvalidParams, "fit requires --input");
    LoadedInput in = load_input(c.input);
    SusceptibilityDataset data = observations_from(in.table);
    if (c.field_oe) data.applied_field_oe = *c.field_oe;

    ModelParams initial{-400.0, 2.0, 1e-5, 3, 0.5};
    initial = apply_flags(initial, c);
    initial.validate();
    const FitResult r = fit(data, initial);

    std::string text = "# spinent fit\n# chi_units=muB_per_FU_Oe\n# command=fit\n";
    text += "# input=" + c.input + "\n# input_fnv1a64=" + in.hash + "\n";
    append_params(text, initial, "initial_");
    append_params(text, r.params);
    text += "# converged=" + std::string(r.converged ? "true" : "false") + "\n";
    text += "# iterations=" + std::to_string(r.iterations) + "\n";
    text += "# residual_norm=" + io::format_sci(r.residual_norm) + "\n";
    text += "# var_j_over_kb=" + io::format_sci(r.covariance_diag[0]) + "\n";
    text += "# var_g=" + io::format_sci(r.covariance_diag[1]) + "\n";
    text += "# var_curie_c=" + io::format_sci(r.covariance_diag[2]) + "\n";
    text += "# field_Oe=" + io::format_exact(data.applied_field_oe) + "\n";
    text += io::dataset_table_text(data);
    emit(c, text, out);

    std::ostream &summary = c.output.empty() ? err : out;
    summary << "fit " << (r.converged ? "converged" : "did NOT converge") << " after "
            << r.iterations << " iterations\n"
            << "J/k_B = " << io::format_exact(r.params.j_over_kb) << " K\n"
            << "g = " << io::format_exact(r.params.g) << "\n"
            << "C = " << io::format_exact(r.params.curie_c) << " K muB FU^-1 Oe^-1\n"
            << "weighted RMS residual = " << io::format_sci(r.residual_norm) << "\n";
    return exit_ok;
}

inline int run_synth(const RunConfig &c, std::ostream &out, std::ostream &) {
    c.validate();
    const ModelParams p = apply_flags(ModelParams::reference(), c);
    p.validate();
    const io::GridSpec grid = c.grid.value_or(io::GridSpec{});
    SusceptibilityDataset d = synth_dataset(p, grid.values(), c.noise_rel, c.seed);
    d.applied_field_oe = c.field_oe.value_or(100.0);

    std::string text = "# spinent synth\n# chi_units=muB_per_FU_Oe\n";
    append_params(text, p, "generator_");
    text += "# grid=" + grid.to_string() + "\n";
    text += "# noise_rel=" + io::format_exact(c.noise_rel) + "\n";
    text += "# seed=" + std::to_string(c.seed) + "\n";
    emit(c, text + io::dataset_text(d), out);
    return exit_ok;
}

inline std::string one_decimal(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

inline int run_thresholds(const RunConfig &c, std::ostream &out, std::ostream &err) {
    c.validate();
    const ModelParams p = apply_flags(ModelParams::reference(), c);
    p.validate();
    std::string text;
    try {
        const ThresholdSet th = thresholds(p, c.epsilon);
        text += "T_e_K=" + one_decimal(th.t_entanglement) + "\n";
        text += "T_Bell_K=" + one_decimal(th.t_bell) + "\n";
        text += "T_plateau_K=" + one_decimal(th.t_plateau) + "\n";
        text += "plateau_epsilon=" + io::format_exact(th.plateau_epsilon) + "\n";
        text += "bisection_gap_K=" + io::format_sci(th.max_bisection_gap) + "\n";
    } catch (const Error &e) {
        if (e.kind() != ErrorKind::NotAntiferromagnetic) throw;
        text += "thresholds=absent\n";
        err << "warning: J/k_B >= 0 (not antiferromagnetic): thresholds absent\n";
    }
    emit(c, text, out);
    return exit_ok;
}

/// max |a - b| / max(|a|, |b|), with 0/0 counted as 0.
inline double relative_deviation(double a, double b) {
    if (a == b) return 0.0;
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

struct FamilyResult {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 1e-10;
    [[nodiscard]] bool passed() const { return max_deviation <= tolerance; }
};

/// Exact-diagonalization cross-checks of every closed form on a 20-point
/// log grid, 10-1000 K. `inject_fault` perturbs the closed-form side so the
/// harness can be seen to fail.
inline std::vector<FamilyResult> validation_families(const ModelParams &p, bool inject_fault) {
    const std::vector<double> grid = io::GridSpec{10.0, 1000.0, 20, true}.values();
    const double fault = inject_fault ? 1.0 + 1e-6 : 1.0;
    const SpinChainOracle dimer(SpinChainSpec::dimer(p.j_over_kb, p.g));
    const SpinChainOracle trimer(SpinChainSpec::trimer(p.j_over_kb, 0.0, p.g));
    const BellDirections dirs = BellDirections::dimer_optimal();

    FamilyResult chi{"fluctuation_chi_vs_dimer_closed_form"};
    FamilyResult conc{"pair_concurrence_vs_closed_form"};
    FamilyResult bell{"bell_expectation_vs_closed_form"};
    FamilyResult chsh{"chsh_maximum_vs_bell_expectation"};
    FamilyResult trimer_chi{"trimer_decoupled_chi_vs_dimer_plus_curie"};
    FamilyResult trimer_conc{"trimer_decoupled_pair_concurrence"};
    const ModelParams free_spin{0.0, p.g, units::chi_prefactor(p.g) / 4.0, 1, 0.5};

    for (double t : grid) {
        chi.max_deviation = std::max(chi.max_deviation,
            relative_deviation(dimer.fluctuation_susceptibility(t), fault * chi_dimer(p, t)));
        conc.max_deviation = std::max(conc.max_deviation,
            relative_deviation(dimer.pair_concurrence(t, 0, 1), fault * concurrence_closed(p, t)));

        ComplexMatrix rho = dimer.pair_state(t, 0, 1);
        rho = (rho + rho.adjoint()) * complex_t(0.5);
        rho *= complex_t(1.0 / rho.trace().real());
        const TwoQubitState state(rho);
        const double b = std::abs(bell_expectation(state, dirs));
        bell.max_deviation = std::max(bell.max_deviation,
            relative_deviation(b, fault * bell_closed(p, t)));
        chsh.max_deviation = std::max(chsh.max_deviation,
            relative_deviation(chsh_maximum(state), fault * b));

        const double decoupled = chi_dimer(p, t) + chi_monomer(free_spin, t);
        trimer_chi.max_deviation = std::max(trimer_chi.max_deviation,
            relative_deviation(trimer.fluctuation_susceptibility(t), fault * decoupled));
        trimer_conc.max_deviation = std::max(trimer_conc.max_deviation,
            relative_deviation(trimer.pair_concurrence(t, 0, 1), fault * concurrence_closed(p, t)));
    }
    return {chi, conc, bell, chsh, trimer_chi, trimer_conc};
}

inline int run_validate(const RunConfig &c, std::ostream &out, std::ostream &) {
    c.validate();
    ModelParams p = apply_flags(ModelParams::reference(), c);
    p.validate();
    const auto families = validation_families(p, c.inject_fault);

    std::string text = "# spinent validate\n";
    append_params(text, p);
    bool ok = true;
    for (const auto &f : families) {
        ok = ok && f.passed();
        text += "# family=" + f.name + " max_rel_dev=" + io::format_sci(f.max_deviation) +
                " tol=" + io::format_sci(f.tolerance) + " status=" +
                (f.passed() ? "PASS" : "FAIL") + "\n";
    }
    text += std::string("# overall=") + (ok ? "PASS" : "FAIL") + "\n";

    // Sensitivity of the dimer-pair measures to a dimer-monomer coupling J'.
    text += "j_prime_over_j,temperature_K,pair01_concurrence,concurrence_closed,chi_rel_dev_vs_decoupled\n";
    const ModelParams free_spin{0.0, p.g, units::chi_prefactor(p.g) / 4.0, 1, 0.5};
    for (double ratio : {0.0, 0.001, 0.01, 0.05, 0.1}) {
        const SpinChainOracle trimer(SpinChainSpec::trimer(p.j_over_kb, ratio * p.j_over_kb, p.g));
        for (double t : {50.0, 100.0, 300.0, 630.0}) {
            const double decoupled = chi_dimer(p, t) + chi_monomer(free_spin, t);
            text += io::format_sci(ratio) + "," + io::format_sci(t) + "," +
                    io::format_sci(trimer.pair_concurrence(t, 0, 1)) + "," +
                    io::format_sci(concurrence_closed(p, t)) + "," +
                    io::format_sci(relative_deviation(trimer.fluctuation_susceptibility(t), decoupled)) +
                    "\n";
        }
    }
    emit(c, text, out);
    return ok ? exit_ok : exit_validation;
}

/// Maps library errors to the exit-code contract.
inline int exit_code_for(const Error &e) {
    switch (e.kind()) {
    case ErrorKind::InvalidParams:
    case ErrorKind::NotAntiferromagnetic:
        return exit_usage;
    default:
        return exit_data;
    }
}

} // namespace spinent::cli
