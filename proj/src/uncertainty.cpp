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

#include "quasidet/uncertainty.hpp"

#include <cmath>

#include "quasidet/errors.hpp"

namespace quasidet {

ConditionalUncertainty conditional_uncertainty(const Observable &a, const PureState &i,
                                               const PureState &f, double ortho_eps) {
    if (a.dim() != i.dim() || i.dim() != f.dim()) {
        throw ShapeError("conditional_uncertainty: dimensions disagree");
    }
    const cplx ov = inner(f.ket(), i.ket());
    const double p = std::norm(ov);
    if (p < ortho_eps) {
        throw OrthogonalPostSelectionError(
            "conditional uncertainty undefined at (near-)orthogonal post-selection", p);
    }
    const ComplexVector ai = apply(a.matrix(), i.ket());
    const ComplexVector a2i = apply(a.matrix(), ai); // A^2 |i> via matrix product

    ConditionalUncertainty out;
    out.final_label = f.label();
    out.weak_mean = inner(f.ket(), ai) / ov;
    out.weak_second_moment = inner(f.ket(), a2i) / ov;
    out.value = out.weak_second_moment - std::norm(out.weak_mean);
    return out;
}

UncertaintyBudget uncertainty_budget(const Observable &a, const PureState &i,
                                     const FinalBasis &basis, double ortho_eps) {
    if (a.dim() != i.dim() || i.dim() != basis.dim()) {
        throw ShapeError("uncertainty_budget: dimensions disagree");
    }
    const ComplexVector ai = apply(a.matrix(), i.ket());
    const ComplexVector a2i = apply(a.matrix(), ai);

    const cplx mean_raw = inner(i.ket(), ai);
    if (std::abs(mean_raw.imag()) > 1e-12) {
        throw Error("uncertainty_budget: expectation has imaginary residue");
    }
    const double mean = mean_raw.real();

    // (A - <A>)|i>: total variance as an exact sum of squares.
    ComplexVector shifted(i.dim());
    for (std::size_t k = 0; k < i.dim(); ++k) {
        shifted[k] = ai[k] - mean * i.ket()[k];
    }

    UncertaintyBudget budget;
    budget.expectation_value = mean;
    double total = 0.0;
    for (std::size_t k = 0; k < shifted.dim(); ++k) {
        total += std::norm(shifted[k]);
    }
    budget.total_variance = total;

    cplx avg = 0.0;
    double wvv = 0.0;
    budget.per_f.reserve(basis.size());
    for (std::size_t fi = 0; fi < basis.size(); ++fi) {
        const PureState &f = basis.state(fi);
        const cplx ov = inner(f.ket(), i.ket());
        const double p = std::norm(ov);
        const cplx num = inner(f.ket(), ai);
        const cplx num2 = inner(f.ket(), a2i);

        BudgetTerm term;
        term.weight = p;
        term.weighted_value = std::conj(ov) * num2 - std::norm(num);
        term.uncertainty.final_label = f.label();
        if (p >= ortho_eps) {
            term.uncertainty.weak_mean = num / ov;
            term.uncertainty.weak_second_moment = num2 / ov;
            term.uncertainty.value =
                term.uncertainty.weak_second_moment - std::norm(term.uncertainty.weak_mean);
        } else {
            term.skipped = true;
        }
        avg += term.weighted_value;
        wvv += std::norm(inner(f.ket(), shifted));
        budget.per_f.push_back(std::move(term));
    }
    budget.avg_conditional = avg;
    budget.weak_value_variance = wvv;
    return budget;
}

QuasiDeterminismReport check_quasi_determinism(const Observable &a, const PureState &i,
                                               const FinalBasis &basis, double tolerance,
                                               double ortho_eps) {
    const UncertaintyBudget budget = uncertainty_budget(a, i, basis, ortho_eps);
    QuasiDeterminismReport report;
    report.avg_conditional = budget.avg_conditional;
    report.tolerance = tolerance;
    report.pass = std::abs(budget.avg_conditional) <= tolerance;
    return report;
}

} // namespace quasidet
