// Copyright 2026 The quasidet authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quasidet/commands.hpp"
#include "quasidet/errors.hpp"

namespace quasidet {

namespace {

std::vector<double> parse_couplings_arg(const std::string &text) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string piece =
            text.substr(start, comma == std::string::npos ? comma : comma - start);
        const char *begin = piece.c_str();
        char *end = nullptr;
        const double g = std::strtod(begin, &end);
        if (piece.empty() || end != begin + piece.size()) {
            throw ParameterError("cannot parse coupling '" + piece +
                                 "' in --couplings list");
        }
        out.push_back(g);
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

struct CliState {
    std::string scenario_arg;
    std::string out_dir;
    std::string couplings_arg;
    std::string mode = "complex";
    std::uint64_t seed = 0;
    std::uint64_t shots = 0;
    double tol_identity = kDefaultIdentityTol;
    double tol_basis = kDefaultBasisTol;
    std::string format = "csv";
};

void add_common_options(CLI::App *sub, CliState &st) {
    sub->add_option("--out", st.out_dir, "directory for machine-readable report files");
    sub->add_option("--seed", st.seed, "override the simulation seed");
    sub->add_option("--shots", st.shots, "override the per-run shot count");
    sub->add_option("--couplings", st.couplings_arg,
                    "comma-separated g values for extrapolation, e.g. 0.05,0.1,0.2");
    sub->add_option("--tol-identity", st.tol_identity,
                    "tolerance for the identity checks");
    sub->add_option("--tol-basis", st.tol_basis,
                    "orthonormality tolerance for parsed bases");
    sub->add_option("--format", st.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));
}

CommandOptions make_options(const CLI::App *sub, const CliState &st) {
    CommandOptions opts;
    if (sub->count("--seed")) {
        opts.seed = st.seed;
    }
    if (sub->count("--shots")) {
        opts.shots = st.shots;
    }
    if (sub->count("--couplings")) {
        opts.couplings = parse_couplings_arg(st.couplings_arg);
    }
    opts.tol_identity = st.tol_identity;
    opts.tol_basis = st.tol_basis;
    opts.format = st.format;
    return opts;
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"weak measurement statistics: weak values, quasi-probabilities, "
                 "conditional uncertainties, pointer simulation, tomography"};
    app.name("quasidet");
    app.require_subcommand(1);

    CliState st;
    CLI::App *analyze = app.add_subcommand(
        "analyze", "exact weak-value statistics and identity checks for a scenario");
    analyze->add_option("scenario", st.scenario_arg, "scenario file or built-in name")
        ->required();
    add_common_options(analyze, st);

    CLI::App *simulate = app.add_subcommand(
        "simulate", "von Neumann pointer simulation with zero-coupling extrapolation");
    simulate->add_option("scenario", st.scenario_arg, "scenario file or built-in name")
        ->required();
    add_common_options(simulate, st);

    CLI::App *tomography = app.add_subcommand(
        "tomography", "reconstruct the transient operator from weak values");
    tomography->add_option("scenario", st.scenario_arg, "scenario file or built-in name")
        ->required();
    tomography->add_option("--mode", st.mode, "complex | hermitian | simulated")
        ->check(CLI::IsMember({"complex", "hermitian", "simulated"}));
    add_common_options(tomography, st);

    CLI::App *demo =
        app.add_subcommand("demo", "built-in Pauli paradox walkthrough (analyze + simulate)");
    add_common_options(demo, st);

    std::vector<const char *> argv;
    argv.push_back("quasidet");
    for (const std::string &a : args) {
        argv.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        ReportBundle bundle;
        if (app.got_subcommand(analyze)) {
            const CommandOptions opts = make_options(analyze, st);
            bundle = cmd_analyze(load_scenario(st.scenario_arg, opts.tol_basis), opts);
        } else if (app.got_subcommand(simulate)) {
            const CommandOptions opts = make_options(simulate, st);
            bundle = cmd_simulate(load_scenario(st.scenario_arg, opts.tol_basis), opts);
        } else if (app.got_subcommand(tomography)) {
            const CommandOptions opts = make_options(tomography, st);
            bundle = cmd_tomography(load_scenario(st.scenario_arg, opts.tol_basis),
                                    st.mode, opts);
        } else {
            bundle = cmd_demo_pauli(make_options(demo, st));
        }

        if (!st.out_dir.empty()) {
            write_bundle(bundle, st.out_dir);
            bundle.summary += "\nreport files written to " + st.out_dir + "\n";
        }
        out << bundle.summary;
        return bundle.exit_code;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace quasidet
