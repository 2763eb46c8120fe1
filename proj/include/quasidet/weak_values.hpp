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

/// @file
/// Post-selected weak-measurement statistics: complex weak values, transient
/// density operators, the mixture decomposition of the initial projector, and
/// weak conditional quasi-probabilities.
///
/// All quantities are conditioned on a post-selection outcome |f> and blow up
/// as <f|i> -> 0; every operation takes an `ortho_eps` floor on |<f|i>|^2 and
/// throws OrthogonalPostSelectionError below it.  The decomposition check is
/// the exception: terms below the floor carry vanishing weight and are
/// skipped (and reported) instead.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quasidet/numerics.hpp"
#include "quasidet/states.hpp"

namespace quasidet {

inline constexpr double kOrthoEps = 1e-12;

// <f|A|i> / <f|i>: complex, may lie far outside A's spectrum.
struct WeakValue {
    cplx value;
    std::string initial_label;
    std::string final_label;
    std::string observable_label;
    double post_selection_prob = 0.0;
};

// |i><i|f><f| / |<f|i>|^2: trace one, generally NOT Hermitian.  Hermiticity
// must not be asserted anywhere downstream.
struct TransientDensity {
    ComplexMatrix matrix;
    cplx trace_check;
    std::string initial_label;
    std::string final_label;
};

struct QuasiProbEntry {
    double eigenvalue = 0.0;
    cplx qprob;
};

// One post-selection outcome's quasi-probability over the eigenvalues of an
// observable.  Entries sum to 1; real parts may be negative and imaginary
// parts nonzero.
struct QuasiProbRow {
    std::vector<QuasiProbEntry> entries;
    std::string final_label;
    std::string observable_label;
};

// Residual of the identity  sum_f |<f|i>|^2 R_if = |i><i|.
struct DecompositionCheck {
    double residual = 0.0;
    std::vector<std::size_t> skipped_outcomes;
};

WeakValue weak_value(const Observable &a, const PureState &i, const PureState &f,
                     double ortho_eps = kOrthoEps);

TransientDensity transient_density(const PureState &i, const PureState &f,
                                   double ortho_eps = kOrthoEps);

// (R + R^dag)/2; traces against Hermitian observables give Re of weak values.
ComplexMatrix hermitian_part(const TransientDensity &r);

DecompositionCheck verify_decomposition(const PureState &i, const FinalBasis &basis,
                                        double ortho_eps = kOrthoEps);

// One complex entry per distinct eigenvalue: the weak value of the eigenspace
// projector.
QuasiProbRow weak_conditional_probs(const Observable &a, const PureState &i, const PureState &f,
                                    double ortho_eps = kOrthoEps);

} // namespace quasidet
