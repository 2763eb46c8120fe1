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

#include "quasidet/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quasidet/errors.hpp"
#include "quasidet/simulator.hpp"
#include "quasidet/tomography.hpp"
#include "quasidet/weak_values.hpp"

namespace quasidet {

namespace {

using json = nlohmann::ordered_json;

// Simulated tomography needs a larger budget than interactive pointer runs:
// the reconstruction error contract is much tighter than a single record.
constexpr std::uint64_t kTomographyDefaultShots = 2000000;

const std::vector<double> kDefaultCouplings = {0.05, 0.1, 0.2};

std::string fmt_cplx(cplx z) {
    const std::string re = format_double(z.real());
    const double im = z.imag();
    return re + (std::signbit(im) ? " - " : " + ") + format_double(std::abs(im)) + "i";
}

std::string join_couplings(const std::vector<double> &gs) {
    std::string out;
    for (std::size_t j = 0; j < gs.size(); ++j) {
        if (j) {
            out += ';';
        }
        out += format_double(gs[j]);
    }
    return out;
}

void push_check(json &checks, const std::string &name, const std::string &observable,
                double value, double tol, int &exit_code) {
    const bool pass = value <= tol;
    if (!pass) {
        exit_code = 2;
    }
    checks.push_back({{"check", name},
                      {"observable", observable},
                      {"value", value},
                      {"tolerance", tol},
                      {"pass", pass}});
}

// Exact statistics and identity checks; returns 0 or 2.
int build_analyze(const Scenario &sc, const CommandOptions &opts, ReportBuilder &builder,
                  std::ostream &summary) {
    json &wv_table = builder.table("weak_values");
    json &qp_table = builder.table("quasi_probs");
    json &unc_table = builder.table("uncertainty");
    json &budget_table = builder.table("budget");
    json &checks = builder.table("identity_checks");

    const PureState &i = sc.initial;
    const FinalBasis &basis = sc.final_basis;
    int exit_code = 0;

    summary << "scenario: dim " << sc.dim << ", initial |" << i.label()
            << ">, final basis {";
    for (std::size_t f = 0; f < basis.size(); ++f) {
        summary << (f ? ", " : "") << basis.state(f).label();
    }
    summary << "}, " << sc.observables.size() << " observable(s)\n";

    // scenario-level identities: the p(f)-weighted transient operators
    // reassemble the initial projector, each with unit trace
    const DecompositionCheck dec = verify_decomposition(i, basis);
    push_check(checks, "mixture_decomposition", "", dec.residual, opts.tol_identity,
               exit_code);
    double worst_trace = 0.0;
    for (std::size_t f = 0; f < basis.size(); ++f) {
        try {
            const TransientDensity td = transient_density(i, basis.state(f));
            worst_trace = std::max(worst_trace,
                                   std::abs(trace(td.matrix) - cplx(1.0, 0.0)));
        } catch (const OrthogonalPostSelectionError &) {
            // no transient operator for impossible outcomes
        }
    }
    push_check(checks, "transient_trace", "", worst_trace, opts.tol_identity, exit_code);

    for (const Observable &a : sc.observables) {
        const UncertaintyBudget budget = uncertainty_budget(a, i, basis);
        summary << "\nobservable " << a.name() << ": <A> = "
                << format_double(budget.expectation_value)
                << ", total variance = " << format_double(budget.total_variance) << "\n";

        const std::size_t n_spaces = a.eigenspaces().size();
        std::vector<cplx> born_marginal(n_spaces, cplx(0.0, 0.0));
        double worst_row_sum = 0.0;
        double worst_qp_weak = 0.0;

        for (std::size_t f = 0; f < basis.size(); ++f) {
            const PureState &fs = basis.state(f);
            const double p = born_weight(i, fs);
            const BudgetTerm &term = budget.per_f[f];

            if (term.skipped) {
                wv_table.push_back({{"observable", a.name()},
                                    {"final", fs.label()},
                                    {"prob", p},
                                    {"weak_re", nullptr},
                                    {"weak_im", nullptr},
                                    {"skipped", true}});
                unc_table.push_back({{"observable", a.name()},
                                     {"final", fs.label()},
                                     {"weight", term.weight},
                                     {"uncertainty_re", nullptr},
                                     {"uncertainty_im", nullptr},
                                     {"weighted_re", term.weighted_value.real()},
                                     {"weighted_im", term.weighted_value.imag()},
                                     {"skipped", true}});
                summary << "  f = " << fs.label() << ": p = " << format_double(p)
                        << ", skipped (orthogonal post-selection)\n";
                continue;
            }

            const cplx w = term.uncertainty.weak_mean;
            wv_table.push_back({{"observable", a.name()},
                                {"final", fs.label()},
                                {"prob", p},
                                {"weak_re", w.real()},
                                {"weak_im", w.imag()},
                                {"skipped", false}});
            unc_table.push_back({{"observable", a.name()},
                                 {"final", fs.label()},
                                 {"weight", term.weight},
                                 {"uncertainty_re", term.uncertainty.value.real()},
                                 {"uncertainty_im", term.uncertainty.value.imag()},
                                 {"weighted_re", term.weighted_value.real()},
                                 {"weighted_im", term.weighted_value.imag()},
                                 {"skipped", false}});
            summary << "  f = " << fs.label() << ": p = " << format_double(p)
                    << ", weak value = " << fmt_cplx(w)
                    << ", conditional uncertainty = " << fmt_cplx(term.uncertainty.value)
                    << "\n";

            const QuasiProbRow row = weak_conditional_probs(a, i, fs);
            cplx row_sum(0.0, 0.0);
            cplx row_weak(0.0, 0.0);
            for (std::size_t k = 0; k < row.entries.size(); ++k) {
                const QuasiProbEntry &e = row.entries[k];
                qp_table.push_back({{"observable", a.name()},
                                    {"final", fs.label()},
                                    {"eigenvalue", e.eigenvalue},
                                    {"qprob_re", e.qprob.real()},
                                    {"qprob_im", e.qprob.imag()}});
                row_sum += e.qprob;
                row_weak += e.eigenvalue * e.qprob;
                born_marginal[k] += p * e.qprob;
            }
            worst_row_sum = std::max(worst_row_sum, std::abs(row_sum - cplx(1.0, 0.0)));
            worst_qp_weak = std::max(worst_qp_weak, std::abs(row_weak - w));
        }

        budget_table.push_back({{"observable", a.name()},
                                {"expectation", budget.expectation_value},
                                {"total_variance", budget.total_variance},
                                {"weak_value_variance", budget.weak_value_variance},
                                {"avg_conditional_re", budget.avg_conditional.real()},
                                {"avg_conditional_im", budget.avg_conditional.imag()}});
        summary << "  p(f)-weighted average conditional uncertainty = "
                << fmt_cplx(budget.avg_conditional) << "\n";

        // orthogonal outcomes contribute exactly zero to the Born marginal
        // (the 1/p pole cancels), so the skipped rows above lose nothing
        double worst_marginal = 0.0;
        for (std::size_t k = 0; k < n_spaces; ++k) {
            const ComplexVector pk_i = apply(a.eigenspaces()[k].projector, i.ket());
            const double born = inner(i.ket(), pk_i).real();
            worst_marginal = std::max(worst_marginal, std::abs(born_marginal[k] - born));
        }

        push_check(checks, "quasi_determinism", a.name(),
                   std::abs(budget.avg_conditional), opts.tol_identity, exit_code);
        push_check(checks, "variance_transfer", a.name(),
                   std::abs(budget.total_variance - budget.weak_value_variance -
                            budget.avg_conditional.real()),
                   opts.tol_identity, exit_code);
        push_check(checks, "quasi_prob_row_sum", a.name(), worst_row_sum,
                   opts.tol_identity, exit_code);
        push_check(checks, "quasi_prob_weak_value", a.name(), worst_qp_weak,
                   opts.tol_identity, exit_code);
        push_check(checks, "quasi_prob_born_marginal", a.name(), worst_marginal,
                   opts.tol_identity, exit_code);
    }

    std::size_t passed = 0;
    for (const json &row : checks) {
        if (row["pass"].get<bool>()) {
            ++passed;
        }
    }
    summary << "\nidentity checks at tolerance " << format_double(opts.tol_identity)
            << ": " << passed << "/" << checks.size() << " pass\n";
    if (exit_code != 0) {
        for (const json &row : checks) {
            if (!row["pass"].get<bool>()) {
                summary << "  FAILED " << row["check"].get<std::string>();
                const std::string obs = row["observable"].get<std::string>();
                if (!obs.empty()) {
                    summary << " (" << obs << ")";
                }
                summary << ": " << format_double(row["value"].get<double>()) << "\n";
            }
        }
    }
    return exit_code;
}

SimConfig effective_config(const Scenario &sc, const CommandOptions &opts) {
    SimConfig cfg = sc.sim.value_or(SimConfig{});
    if (opts.seed) {
        cfg.seed = *opts.seed;
    }
    if (opts.shots) {
        cfg.shots = *opts.shots;
    }
    cfg.validate();
    return cfg;
}

void build_simulate(const Scenario &sc, const SimConfig &cfg,
                    const std::vector<double> &couplings, ReportBuilder &builder,
                    std::ostream &summary) {
    json &records_table = builder.table("pointer_records");
    json &extrap_table = builder.table("extrapolation");

    const PureState &i = sc.initial;
    const FinalBasis &basis = sc.final_basis;
    const char *readout = cfg.readout == Readout::position ? "position" : "momentum";

    for (std::size_t obs_idx = 0; obs_idx < sc.observables.size(); ++obs_idx) {
        const Observable &a = sc.observables[obs_idx];
        // distinct substream per observable and per post-selection outcome,
        // so physically identical distributions do not produce identical rows
        const std::uint64_t obs_stream = mix64(cfg.stream, obs_idx + 1);
        SimConfig run_cfg = cfg;
        run_cfg.stream = mix64(obs_stream, 0);

        summary << "\nsimulating " << a.name() << ": g = " << format_double(cfg.g)
                << ", sigma = " << format_double(cfg.sigma) << ", shots = " << cfg.shots
                << ", readout = " << readout << "\n";
        const auto records = run_weak_measurement(a, i, basis, run_cfg);
        for (std::size_t f = 0; f < records.size(); ++f) {
            const PointerRecord &r = records[f];
            records_table.push_back({{"observable", a.name()},
                                     {"final", r.final_label},
                                     {"readout", readout},
                                     {"g", cfg.g},
                                     {"sigma", cfg.sigma},
                                     {"shots", cfg.shots},
                                     {"kept", r.kept_shots},
                                     {"post_selection_rate", r.post_selection_rate},
                                     {"mean_reading", r.mean_reading},
                                     {"std_error", r.std_error},
                                     {"rescaled_mean", r.rescaled_mean}});
            summary << "  f = " << r.final_label << ": kept " << r.kept_shots
                    << ", rescaled mean = " << format_double(r.rescaled_mean)
                    << " +/- " << format_double(r.std_error / cfg.g) << "\n";
        }

        for (std::size_t f = 0; f < basis.size(); ++f) {
            const PureState &fs = basis.state(f);
            SimConfig ex_cfg = cfg;
            ex_cfg.stream = mix64(obs_stream, f + 1);
            try {
                const Extrapolation ex = extrapolate_weak_value(a, i, fs, ex_cfg, couplings);
                json row = {{"observable", a.name()},
                            {"final", fs.label()},
                            {"estimate", ex.estimate},
                            {"ci", ex.ci},
                            {"curvature", ex.curvature},
                            {"couplings", join_couplings(ex.couplings)}};
                try {
                    const WeakValue w = weak_value(a, i, fs);
                    row["exact_re"] = w.value.real();
                } catch (const OrthogonalPostSelectionError &) {
                    row["exact_re"] = nullptr;
                }
                extrap_table.push_back(std::move(row));
                summary << "  extrapolated Re weak value at f = " << fs.label() << ": "
                        << format_double(ex.estimate) << " +/- " << format_double(ex.ci)
                        << "\n";
            } catch (const PostSelectionStarvedError &) {
                summary << "  extrapolation at f = " << fs.label()
                        << ": skipped (post-selection starved)\n";
            }
        }
    }
}

void build_reconstruction_tables(const ReconstructionReport &rep, ReportBuilder &builder,
                                 const std::string &final_label) {
    json &summary_table = builder.table("tomography_summary");
    summary_table.push_back({{"mode", mode_name(rep.mode)},
                             {"source", rep.source},
                             {"dim", rep.target.rows()},
                             {"final", final_label},
                             {"max_abs_error", rep.max_abs_error},
                             {"largest_ci", rep.largest_ci}});

    json &matrix_table = builder.table("reconstruction");
    for (std::size_t r = 0; r < rep.reconstructed.rows(); ++r) {
        for (std::size_t c = 0; c < rep.reconstructed.cols(); ++c) {
            matrix_table.push_back(
                {{"row", r},
                 {"col", c},
                 {"reconstructed_re", rep.reconstructed(r, c).real()},
                 {"reconstructed_im", rep.reconstructed(r, c).imag()},
                 {"target_re", rep.target(r, c).real()},
                 {"target_im", rep.target(r, c).imag()},
                 {"abs_error", std::abs(rep.reconstructed(r, c) - rep.target(r, c))}});
        }
    }

    json &coeff_table = builder.table("coefficients");
    for (std::size_t k = 0; k < rep.weak_values.size(); ++k) {
        coeff_table.push_back({{"k", k},
                               {"weak_re", rep.weak_values[k].real()},
                               {"weak_im", rep.weak_values[k].imag()}});
    }
}

} // namespace

ReportBundle cmd_analyze(const Scenario &scenario, const CommandOptions &opts) {
    ReportMeta meta;
    meta.command = "analyze";
    meta.format = opts.format;
    meta.tol_identity = opts.tol_identity;
    meta.tol_basis = opts.tol_basis;
    ReportBuilder builder(meta);

    std::ostringstream summary;
    ReportBundle bundle;
    bundle.exit_code = build_analyze(scenario, opts, builder, summary);
    bundle.summary = summary.str();
    bundle.files = builder.finish();
    return bundle;
}

ReportBundle cmd_simulate(const Scenario &scenario, const CommandOptions &opts) {
    const SimConfig cfg = effective_config(scenario, opts);
    const std::vector<double> couplings = opts.couplings.value_or(kDefaultCouplings);

    ReportMeta meta;
    meta.command = "simulate";
    meta.format = opts.format;
    meta.seed = cfg.seed;
    meta.shots = cfg.shots;
    meta.couplings = couplings;
    meta.tol_identity = opts.tol_identity;
    meta.tol_basis = opts.tol_basis;
    ReportBuilder builder(meta);

    std::ostringstream summary;
    build_simulate(scenario, cfg, couplings, builder, summary);

    ReportBundle bundle;
    bundle.summary = summary.str();
    bundle.files = builder.finish();
    return bundle;
}

ReportBundle cmd_tomography(const Scenario &scenario, const std::string &mode,
                            const CommandOptions &opts) {
    if (mode != "complex" && mode != "hermitian" && mode != "simulated") {
        throw ParameterError("unknown tomography mode '" + mode +
                             "' (expected complex, hermitian, or simulated)");
    }

    ReportMeta meta;
    meta.command = "tomography";
    meta.format = opts.format;
    meta.tol_identity = opts.tol_identity;
    meta.tol_basis = opts.tol_basis;

    const PureState &i = scenario.initial;
    const PureState &f = scenario.final_basis.state(0);

    std::ostringstream summary;
    ReconstructionReport rep;
    if (mode == "simulated") {
        SimConfig cfg = effective_config(scenario, opts);
        cfg.shots = opts.shots.value_or(kTomographyDefaultShots);
        const std::vector<double> couplings = opts.couplings.value_or(kDefaultCouplings);
        meta.seed = cfg.seed;
        meta.shots = cfg.shots;
        meta.couplings = couplings;
        rep = tomography_from_simulation(scenario, cfg, couplings);
        summary << "simulated tomography of the transient operator at f = " << f.label()
                << " (" << cfg.shots << " shots per coupling)\n"
                << "  reconstructed Hermitian part, max abs error = "
                << format_double(rep.max_abs_error)
                << ", largest per-element ci = " << format_double(rep.largest_ci) << "\n";
    } else {
        const OperatorBasis basis = OperatorBasis::standard(scenario.dim);
        const auto wv = exact_basis_weak_values(i, f, basis);
        const ReconstructionMode rmode = mode == "complex"
                                             ? ReconstructionMode::complex_full
                                             : ReconstructionMode::hermitian_part;
        rep = reconstruct_transient(i, f, basis, wv, rmode);
        summary << "exact " << mode_name(rmode)
                << " tomography of the transient operator at f = " << f.label() << "\n"
                << "  max abs error vs the closed form = "
                << format_double(rep.max_abs_error) << "\n";
    }

    ReportBuilder builder(meta);
    build_reconstruction_tables(rep, builder, f.label());

    ReportBundle bundle;
    bundle.summary = summary.str();
    bundle.files = builder.finish();
    return bundle;
}

ReportBundle cmd_demo_pauli(const CommandOptions &opts) {
    const Scenario scenario = builtin_scenario("pauli_demo");
    const SimConfig cfg = effective_config(scenario, opts);
    const std::vector<double> couplings = opts.couplings.value_or(kDefaultCouplings);

    ReportMeta meta;
    meta.command = "demo";
    meta.format = opts.format;
    meta.seed = cfg.seed;
    meta.shots = cfg.shots;
    meta.couplings = couplings;
    meta.tol_identity = opts.tol_identity;
    meta.tol_basis = opts.tol_basis;
    ReportBuilder builder(meta);

    // the paradox numbers, computed live
    const Observable &xy = scenario.observables.back();
    const WeakValue w = weak_value(xy, scenario.initial, scenario.final_basis.state(0));
    const std::vector<double> &eigs = xy.spectrum().eigenvalues;
    const UncertaintyBudget budget =
        uncertainty_budget(xy, scenario.initial, scenario.final_basis);

    std::ostringstream summary;
    summary << "Pauli paradox demo: i = |x+>, post-selected on the y basis\n\n"
            << "  weak value of X+Y at f = y+:          " << fmt_cplx(w.value) << "\n"
            << "  eigenvalues of X+Y:                   ";
    for (std::size_t k = 0; k < eigs.size(); ++k) {
        summary << (k ? ", " : "") << format_double(eigs[k]);
    }
    summary << "\n  conditional uncertainties (y+, y-):   "
            << fmt_cplx(budget.per_f[0].uncertainty.value) << ", "
            << fmt_cplx(budget.per_f[1].uncertainty.value) << "\n"
            << "  p(f)-weighted average uncertainty:    " << fmt_cplx(budget.avg_conditional)
            << "\n"
            << "  (the weak value exceeds every eigenvalue, yet the post-selected\n"
            << "   uncertainties average away exactly)\n\n";

    const int exit_code = build_analyze(scenario, opts, builder, summary);
    build_simulate(scenario, cfg, couplings, builder, summary);

    ReportBundle bundle;
    bundle.summary = summary.str();
    bundle.files = builder.finish();
    bundle.exit_code = exit_code;
    return bundle;
}

} // namespace quasidet
