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

#include "quasidet/weak_values.hpp"

#include <cmath>

#include "quasidet/errors.hpp"

namespace quasidet {

namespace {

// <f|i> with the orthogonality floor applied.
cplx overlap_or_throw(const PureState &i, const PureState &f, double ortho_eps) {
    if (i.dim() != f.dim()) {
        throw ShapeError("post-selected pair: dimensions disagree");
    }
    const cplx ov = inner(f.ket(), i.ket());
    const double p = std::norm(ov);
    if (p < ortho_eps) {
        throw OrthogonalPostSelectionError(
            "post-selection |" + (f.label().empty() ? std::string("f") : f.label()) +
                "> is (near-)orthogonal to the initial state",
            p);
    }
    return ov;
}

} // namespace

WeakValue weak_value(const Observable &a, const PureState &i, const PureState &f,
                     double ortho_eps) {
    if (a.dim() != i.dim()) {
        throw ShapeError("weak_value: observable dimension disagrees with state");
    }
    const cplx ov = overlap_or_throw(i, f, ortho_eps);
    const cplx num = inner(f.ket(), apply(a.matrix(), i.ket()));
    WeakValue w;
    w.value = num / ov;
    w.initial_label = i.label();
    w.final_label = f.label();
    w.observable_label = a.name();
    w.post_selection_prob = std::norm(ov);
    return w;
}

TransientDensity transient_density(const PureState &i, const PureState &f, double ortho_eps) {
    const cplx ov = overlap_or_throw(i, f, ortho_eps);
    const double p = std::norm(ov);
    // |i><i|f><f| / p  ==  (<i|f>/p) |i><f|
    TransientDensity r;
    r.matrix = (std::conj(ov) / p) * outer(i.ket(), f.ket());
    r.trace_check = trace(r.matrix);
    r.initial_label = i.label();
    r.final_label = f.label();
    return r;
}

ComplexMatrix hermitian_part(const TransientDensity &r) {
    return cplx(0.5) * (r.matrix + adjoint(r.matrix));
}

DecompositionCheck verify_decomposition(const PureState &i, const FinalBasis &basis,
                                        double ortho_eps) {
    if (i.dim() != basis.dim()) {
        throw ShapeError("verify_decomposition: dimensions disagree");
    }
    const std::size_t d = i.dim();
    DecompositionCheck out;
    ComplexMatrix sum(d, d);
    for (std::size_t f = 0; f < basis.size(); ++f) {
        const cplx ov = inner(basis.state(f).ket(), i.ket());
        if (std::norm(ov) < ortho_eps) {
            out.skipped_outcomes.push_back(f);
            continue;
        }
        // p(f) R_if in the cancelled form |i><i|f><f|: no division, so the
        // sum telescopes to |i><i| by completeness alone.
        sum = sum + std::conj(ov) * outer(i.ket(), basis.state(f).ket());
    }
    out.residual = max_abs(sum - outer(i.ket(), i.ket()));
    return out;
}

QuasiProbRow weak_conditional_probs(const Observable &a, const PureState &i, const PureState &f,
                                    double ortho_eps) {
    if (a.dim() != i.dim()) {
        throw ShapeError("weak_conditional_probs: observable dimension disagrees with state");
    }
    const cplx ov = overlap_or_throw(i, f, ortho_eps);
    QuasiProbRow row;
    row.final_label = f.label();
    row.observable_label = a.name();
    row.entries.reserve(a.eigenspaces().size());
    for (const Eigenspace &es : a.eigenspaces()) {
        const cplx num = inner(f.ket(), apply(es.projector, i.ket()));
        row.entries.push_back(QuasiProbEntry{es.eigenvalue, num / ov});
    }
    return row;
}

} // namespace quasidet
