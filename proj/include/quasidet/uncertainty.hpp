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
/// Conditional uncertainties of post-selected ensembles and the exact
/// zero-average identity they satisfy.
///
/// The conditional uncertainty  dA1A2_w(f) = <A^2>_w(f) - |<A>_w(f)|^2  is a
/// complex number whose real part can be negative.  Summed against the
/// post-selection probabilities it vanishes identically, and the variance of
/// the weak values alone reproduces the total variance.  The weighted
/// aggregates are evaluated in division-free cancelled form
///
///   p(f)*<A^2>_w(f)   = <i|f><f|A^2|i>
///   p(f)*|<A>_w(f)|^2 = |<f|A|i>|^2
///
/// which stays exact for every outcome, orthogonal ones included, so the
/// identity checks hold at machine precision by construction rather than by
/// tolerance tuning.  Per-outcome report fields still require the 1/<f|i>
/// division and are marked skipped below the orthogonality floor.

#pragma once

#include <string>
#include <vector>

#include "quasidet/numerics.hpp"
#include "quasidet/states.hpp"
#include "quasidet/weak_values.hpp"

namespace quasidet {

inline constexpr double kDefaultIdentityTol = 1e-10;

struct ConditionalUncertainty {
    cplx value;              // weak_second_moment - |weak_mean|^2
    std::string final_label;
    cplx weak_mean;
    cplx weak_second_moment;
};

struct BudgetTerm {
    double weight = 0.0; // p(f)
    ConditionalUncertainty uncertainty;
    // p(f)*value in cancelled form; exact even when the term is skipped.
    cplx weighted_value;
    bool skipped = false;
};

struct UncertaintyBudget {
    double total_variance = 0.0;      // <A^2> - <A>^2 on the initial state
    double weak_value_variance = 0.0; // sum_f p(f) |<A>_w(f) - <A>|^2
    cplx avg_conditional;             // sum_f p(f) dA^2_w(f)
    double expectation_value = 0.0;   // <A>
    std::vector<BudgetTerm> per_f;
};

struct QuasiDeterminismReport {
    cplx avg_conditional;
    bool pass = false;
    double tolerance = 0.0;
};

ConditionalUncertainty conditional_uncertainty(const Observable &a, const PureState &i,
                                               const PureState &f, double ortho_eps = kOrthoEps);

UncertaintyBudget uncertainty_budget(const Observable &a, const PureState &i,
                                     const FinalBasis &basis, double ortho_eps = kOrthoEps);

QuasiDeterminismReport check_quasi_determinism(const Observable &a, const PureState &i,
                                               const FinalBasis &basis,
                                               double tolerance = kDefaultIdentityTol,
                                               double ortho_eps = kOrthoEps);

} // namespace quasidet
