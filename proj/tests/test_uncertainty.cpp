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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "quasidet/errors.hpp"
#include "quasidet/uncertainty.hpp"
#include "test_support.hpp"

using namespace quasidet;
using qtest::random_scenario;

namespace {

const Observable &demo_observable() {
    static const Observable a = pauli_sum("X+Y", {{1.0, "X"}, {1.0, "Y"}});
    return a;
}

} // namespace

TEST_CASE("demo conditional uncertainties are -2 and +2") {
    const PureState i = PureState::preset("x+");

    const ConditionalUncertainty up =
        conditional_uncertainty(demo_observable(), i, PureState::preset("y+"));
    CHECK(std::abs(up.value - cplx(-2.0)) <= 1e-12);
    CHECK(std::abs(up.weak_mean - cplx(2.0)) <= 1e-12);
    CHECK(std::abs(up.weak_second_moment - cplx(2.0)) <= 1e-12);

    const ConditionalUncertainty dn =
        conditional_uncertainty(demo_observable(), i, PureState::preset("y-"));
    CHECK(std::abs(dn.value - cplx(2.0)) <= 1e-12);
    CHECK(std::abs(dn.weak_mean) <= 1e-12);

    // stored triple is self-consistent
    CHECK(std::abs(up.value - (up.weak_second_moment - std::norm(up.weak_mean))) <= 1e-14);
}

TEST_CASE("eigenstate preparations have zero conditional uncertainty") {
    const Observable z = pauli("Z");
    const ConditionalUncertainty cu =
        conditional_uncertainty(z, PureState::preset("z+"), PureState::preset("x-"));
    CHECK(std::abs(cu.value) <= 1e-12);

    CHECK_THROWS_AS(
        conditional_uncertainty(z, PureState::preset("z+"), PureState::preset("z-")),
        OrthogonalPostSelectionError);
}

TEST_CASE("demo uncertainty budget: weights, signs, and transfer") {
    const UncertaintyBudget b =
        uncertainty_budget(demo_observable(), PureState::preset("x+"), FinalBasis::preset("y"));

    REQUIRE(b.per_f.size() == 2);
    CHECK(b.per_f[0].weight == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(b.per_f[1].weight == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(std::abs(b.per_f[0].uncertainty.value - cplx(-2.0)) <= 1e-12);
    CHECK(std::abs(b.per_f[1].uncertainty.value - cplx(2.0)) <= 1e-12);

    CHECK(std::abs(b.avg_conditional) <= 1e-12);
    CHECK(b.expectation_value == doctest::Approx(1.0).epsilon(1e-13));
    // total variance <(X+Y)^2> - <X+Y>^2 = 2 - 1 = 1, matched by the
    // variance of the weak values alone
    CHECK(b.total_variance == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(b.weak_value_variance == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("eigenstate budget vanishes term by term") {
    const UncertaintyBudget b =
        uncertainty_budget(pauli("Z"), PureState::preset("z+"), FinalBasis::preset("x"));
    CHECK(b.total_variance <= 1e-14);
    CHECK(b.weak_value_variance <= 1e-14);
    CHECK(std::abs(b.avg_conditional) <= 1e-14);
    for (const BudgetTerm &t : b.per_f) {
        CHECK(std::abs(t.uncertainty.value) <= 1e-12);
    }
}

TEST_CASE("zero-average and variance-transfer identities on random sweeps") {
    SeededRng rng(61, 0);
    for (std::size_t d = 2; d <= 8; ++d) {
        for (int round = 0; round < 15; ++round) {
            const auto sc = random_scenario(d, rng);
            const UncertaintyBudget b = uncertainty_budget(sc.observable, sc.initial, sc.basis);

            CHECK(b.total_variance >= 0.0);
            CHECK(std::abs(b.avg_conditional) <= 1e-10);
            CHECK(std::abs(b.total_variance - b.weak_value_variance) <= 1e-10);
            CHECK(std::abs(b.total_variance -
                           (b.weak_value_variance + b.avg_conditional.real())) <= 1e-10);
        }
    }
}

TEST_CASE("per-outcome budget terms merge order-independently") {
    SeededRng rng(67, 0);
    const auto sc = random_scenario(6, rng);
    const UncertaintyBudget fwd = uncertainty_budget(sc.observable, sc.initial, sc.basis);

    std::vector<PureState> reversed(sc.basis.states().rbegin(), sc.basis.states().rend());
    const UncertaintyBudget rev =
        uncertainty_budget(sc.observable, sc.initial, FinalBasis(std::move(reversed)));

    CHECK(std::abs(fwd.avg_conditional - rev.avg_conditional) <= 1e-12);
    CHECK(std::abs(fwd.weak_value_variance - rev.weak_value_variance) <= 1e-12);
    CHECK(fwd.total_variance == rev.total_variance);
}

TEST_CASE("quasi-determinism check") {
    const QuasiDeterminismReport demo = check_quasi_determinism(
        demo_observable(), PureState::preset("x+"), FinalBasis::preset("y"));
    CHECK(demo.pass);
    CHECK(std::abs(demo.avg_conditional) <= 1e-12);
    CHECK(demo.tolerance == kDefaultIdentityTol);

    const QuasiDeterminismReport eig =
        check_quasi_determinism(pauli("Z"), PureState::preset("z-"), FinalBasis::preset("x"));
    CHECK(eig.pass);
}

TEST_CASE("near-orthogonal outcome keeps the identity exact") {
    // p(f=1) = 1e-8: the conditional uncertainty there is huge, but its
    // weight suppresses it and the cancelled form never divides.
    const double eps2 = 1e-8;
    ComplexVector v(2);
    v[0] = std::sqrt(1.0 - eps2);
    v[1] = std::sqrt(eps2);
    const PureState i(v, "tilted");

    const QuasiDeterminismReport rep =
        check_quasi_determinism(pauli("X"), i, FinalBasis::computational(2), 1e-9);
    CHECK(rep.pass);
    CHECK(std::abs(rep.avg_conditional) <= 1e-9);
}

TEST_CASE("exactly orthogonal outcomes still cancel in the aggregate") {
    // i = z+, basis = {z+, z-}, A = X: the orthogonal branch's limiting
    // contribution is -|<z-|X|z+>|^2 = -1 and must not be dropped, or the
    // zero-average identity would read +1.
    const UncertaintyBudget b =
        uncertainty_budget(pauli("X"), PureState::preset("z+"), FinalBasis::computational(2));
    REQUIRE(b.per_f.size() == 2);
    CHECK_FALSE(b.per_f[0].skipped);
    CHECK(b.per_f[1].skipped);
    CHECK(std::abs(b.per_f[1].weighted_value - cplx(-1.0)) <= 1e-14);
    CHECK(std::abs(b.avg_conditional) <= 1e-14);
    CHECK(std::abs(b.total_variance - 1.0) <= 1e-14);
}

TEST_CASE("eigenbasis post-selection gives zero uncertainty everywhere") {
    SeededRng rng(71, 0);
    for (int round = 0; round < 10; ++round) {
        PureState i(haar_random_state(2, rng));
        // keep both outcomes reportable
        if (std::min(born_weight(i, PureState::preset("z+")),
                     born_weight(i, PureState::preset("z-"))) < 1e-3) {
            continue;
        }
        const UncertaintyBudget b =
            uncertainty_budget(pauli("Z"), i, FinalBasis::computational(2));
        for (const BudgetTerm &t : b.per_f) {
            CHECK(std::abs(t.uncertainty.value) <= 1e-12);
        }
    }
}
