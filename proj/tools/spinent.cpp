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

// spinent: dimer/monomer susceptibility analysis, fitting and
// exact-diagonalization validation.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "spinent/commands.hpp"

namespace {

void add_model_flags(CLI::App &cmd, spinent::cli::RunConfig &c) {
    cmd.add_option("--j-over-kb", c.j_over_kb, "Exchange J/k_B in K (negative = antiferromagnetic)");
    cmd.add_option("--g", c.g, "Lande g factor");
    cmd.add_option("--curie-c", c.curie_c, "Curie constant C in K muB FU^-1 Oe^-1");
    cmd.add_option("--n-spins", c.n_spins, "Witness normalization N");
    cmd.add_option("--spin", c.spin, "Witness spin S");
    cmd.add_option("--epsilon", c.epsilon, "Concurrence plateau tolerance")->capture_default_str();
}

void add_io_flags(CLI::App &cmd, spinent::cli::RunConfig &c, std::string &grid) {
    cmd.add_option("--input", c.input, "Input CSV");
    cmd.add_option("--output", c.output, "Output file (stdout when omitted)");
    cmd.add_option("--grid", grid, "Temperature grid min:max:count[:log]");
    cmd.add_option("--seed", c.seed, "Random seed")->capture_default_str();
    cmd.add_option("--field-oe", c.field_oe, "Applied field metadata in Oe");
}

} // namespace

int main(int argc, char **argv) {
    using namespace spinent::cli;

    CLI::App app{"Thermal entanglement from spin-dimer magnetic susceptibility"};
    app.require_subcommand(1);
    RunConfig config;
    std::string grid;

    auto *analyze = app.add_subcommand("analyze", "Susceptibility, witness, concurrence and Bell curves");
    auto *fit = app.add_subcommand("fit", "Fit J/k_B, g and C to a chi(T) dataset");
    auto *synth = app.add_subcommand("synth", "Generate a synthetic chi(T) dataset");
    auto *thresholds = app.add_subcommand("thresholds", "Entanglement, Bell and plateau temperatures");
    auto *validate = app.add_subcommand("validate", "Cross-check closed forms against exact diagonalization");
    for (auto *cmd : {analyze, fit, synth, thresholds, validate}) {
        add_model_flags(*cmd, config);
        add_io_flags(*cmd, config, grid);
    }
    synth->add_option("--noise-rel", config.noise_rel, "Relative Gaussian noise")->capture_default_str();
    validate->add_flag("--inject-fault", config.inject_fault)->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (!grid.empty()) config.grid = spinent::io::GridSpec::parse(grid);
        if (*analyze) return run_analyze(config, std::cout, std::cerr);
        if (*fit) return run_fit(config, std::cout, std::cerr);
        if (*synth) return run_synth(config, std::cout, std::cerr);
        if (*thresholds) return run_thresholds(config, std::cout, std::cerr);
        if (*validate) return run_validate(config, std::cout, std::cerr);
    } catch (const spinent::Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_data;
    }
    return exit_usage;
}
