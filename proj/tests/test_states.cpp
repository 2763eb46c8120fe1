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

#include <cmath>

#include "doctest.h"
#include "quasidet/errors.hpp"
#include "quasidet/states.hpp"
#include "test_support.hpp"

using namespace quasidet;
using qtest::max_abs_diff;
using qtest::random_basis;

TEST_CASE("pure states normalize and record the factor") {
    ComplexVector raw(2);
    raw[0] = cplx(3.0, 0.0);
    raw[1] = cplx(0.0, 4.0);
    PureState s(raw, "test");
    CHECK(s.input_norm() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(std::abs(norm(s.ket()) - 1.0) <= 1e-12);
    CHECK(s.label() == "test");

    CHECK_THROWS_AS(PureState(ComplexVector(3)), ParameterError);
    CHECK_THROWS_AS(PureState(ComplexVector{}), ParameterError);
}

TEST_CASE("state presets match their defining axes") {
    const PureState xp = PureState::preset("x+");
    const PureState yp = PureState::preset("y+");
    const PureState zm = PureState::preset("z-");

    CHECK(expectation(pauli("X"), xp) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(expectation(pauli("Y"), yp) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(expectation(pauli("Z"), zm) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK_THROWS_AS(PureState::preset("w+"), ParameterError);
}

TEST_CASE("born weights") {
    const PureState xp = PureState::preset("x+");
    const PureState xm = PureState::preset("x-");
    const PureState yp = PureState::preset("y+");

    CHECK(born_weight(xp, xp) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(born_weight(xp, xm) <= 1e-14);
    CHECK(born_weight(xp, yp) == doctest::Approx(0.5).epsilon(1e-14));

    ComplexVector big(3);
    big[0] = 1.0;
    CHECK_THROWS_AS(born_weight(xp, PureState(big)), ShapeError);
}

TEST_CASE("born weights over a complete basis sum to one") {
    SeededRng rng(31, 0);
    for (std::size_t d : {2u, 3u, 5u, 8u}) {
        for (int round = 0; round < 10; ++round) {
            const PureState i(haar_random_state(d, rng));
            const FinalBasis basis = random_basis(d, rng);
            double total = 0.0;
            for (std::size_t f = 0; f < d; ++f) {
                total += born_weight(i, basis.state(f));
            }
            CHECK(std::abs(total - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("expectation values") {
    const Observable xy = pauli_sum("X+Y", {{1.0, "X"}, {1.0, "Y"}});
    CHECK(expectation(xy, PureState::preset("x+")) == doctest::Approx(1.0).epsilon(1e-14));

    // eigenstate -> eigenvalue
    CHECK(expectation(pauli("Z"), PureState::preset("z+")) == doctest::Approx(1.0));
    CHECK(expectation(pauli("I"), PureState::preset("y-")) == doctest::Approx(1.0));

    SeededRng rng(7, 0);
    const PureState any(haar_random_state(4, rng));
    const Observable id4("I4", ComplexMatrix::identity(4));
    CHECK(expectation(id4, any) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK_THROWS_AS(expectation(pauli("X"), any), ShapeError);
}

TEST_CASE("pauli constructors") {
    const Observable x = pauli("X");
    CHECK(x.matrix()(0, 1) == cplx(1.0));
    CHECK(x.matrix()(0, 0) == cplx(0.0));

    const Observable xy = pauli_sum("X+Y", {{1.0, "X"}, {1.0, "Y"}});
    REQUIRE(xy.spectrum().eigenvalues.size() == 2);
    CHECK(xy.spectrum().eigenvalues[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
    CHECK(xy.spectrum().eigenvalues[1] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));

    // Z eigenvectors are the computational axis states (up to phase)
    const Observable z = pauli("Z");
    const ComplexMatrix &vz = z.spectrum().eigenvectors;
    CHECK(std::abs(vz(1, 0)) == doctest::Approx(1.0).epsilon(1e-14)); // eigenvalue -1
    CHECK(std::abs(vz(0, 1)) == doctest::Approx(1.0).epsilon(1e-14)); // eigenvalue +1

    CHECK_THROWS_AS(pauli("Q"), ParameterError);
    CHECK_THROWS_AS(pauli_sum("bad", {}), ParameterError);
    CHECK_THROWS_AS(pauli_sum("bad", {{1.0, "XY"}, {1.0, "X"}}), ParameterError);
}

TEST_CASE("observables reject non-hermitian matrices") {
    ComplexMatrix m(2, 2);
    m(0, 1) = cplx(0.0, 1.0);
    m(1, 0) = cplx(0.0, 1.0); // needs -i to be Hermitian
    CHECK_THROWS_AS(Observable("bad", m), NonHermitianError);
}

TEST_CASE("eigenspace resolution reconstructs the observable") {
    SeededRng rng(55, 0);
    for (std::size_t d : {2u, 4u, 6u}) {
        const Observable a("A", qtest::random_hermitian(d, rng));
        ComplexMatrix rebuilt(d, d);
        ComplexMatrix psum(d, d);
        for (const Eigenspace &es : a.eigenspaces()) {
            rebuilt = rebuilt + cplx(es.eigenvalue) * es.projector;
            psum = psum + es.projector;
        }
        CHECK(max_abs_diff(rebuilt, a.matrix()) <= 1e-10);
        CHECK(max_abs_diff(psum, ComplexMatrix::identity(d)) <= 1e-10);
    }
}

TEST_CASE("degenerate spectra collapse into shared eigenspaces") {
    // Z (x) I on two qubits: eigenvalues {-1, -1, +1, +1}
    const Observable zi = pauli_sum("ZI", {{1.0, "ZI"}});
    REQUIRE(zi.eigenspaces().size() == 2);
    CHECK(zi.eigenspaces()[0].eigenvalue == doctest::Approx(-1.0));
    CHECK(zi.eigenspaces()[0].multiplicity == 2);
    CHECK(zi.eigenspaces()[1].eigenvalue == doctest::Approx(1.0));
    CHECK(zi.eigenspaces()[1].multiplicity == 2);

    // mutual orthogonality of the two projectors
    const ComplexMatrix cross =
        matmul(zi.eigenspaces()[0].projector, zi.eigenspaces()[1].projector);
    CHECK(max_abs(cross) <= 1e-12);
}

TEST_CASE("final bases enforce orthonormality and completeness") {
    const FinalBasis yb = FinalBasis::preset("y");
    REQUIRE(yb.size() == 2);
    CHECK(std::abs(inner(yb.state(0).ket(), yb.state(1).ket())) <= 1e-14);

    ComplexMatrix sum(2, 2);
    for (std::size_t f = 0; f < 2; ++f) {
        sum = sum + outer(yb.state(f).ket(), yb.state(f).ket());
    }
    CHECK(max_abs_diff(sum, ComplexMatrix::identity(2)) <= 1e-10);

    const FinalBasis comp = FinalBasis::computational(5);
    CHECK(comp.size() == 5);
    CHECK(comp.state(3).ket()[3] == cplx(1.0));

    std::vector<PureState> skewed;
    skewed.push_back(PureState::preset("z+"));
    skewed.push_back(PureState::preset("x+")); // not orthogonal to z+
    CHECK_THROWS_AS(FinalBasis(std::move(skewed)), ParameterError);

    std::vector<PureState> incomplete;
    incomplete.push_back(PureState::preset("z+"));
    CHECK_THROWS_AS(FinalBasis(std::move(incomplete)), ShapeError);
    CHECK_THROWS_AS(FinalBasis::preset("q"), ParameterError);
}

TEST_CASE("random bases satisfy completeness") {
    SeededRng rng(77, 0);
    for (std::size_t d : {2u, 3u, 7u}) {
        const FinalBasis basis = random_basis(d, rng);
        ComplexMatrix sum(d, d);
        for (std::size_t f = 0; f < d; ++f) {
            sum = sum + outer(basis.state(f).ket(), basis.state(f).ket());
        }
        CHECK(max_abs_diff(sum, ComplexMatrix::identity(d)) <= 1e-10);
    }
}

TEST_CASE("pauli expression parser") {
    const auto xy = parse_pauli_expression("X+Y");
    REQUIRE(xy.size() == 2);
    CHECK(xy[0].coeff == 1.0);
    CHECK(xy[0].word == "X");
    CHECK(xy[1].coeff == 1.0);
    CHECK(xy[1].word == "Y");

    const auto mixed = parse_pauli_expression(" 0.5*XZ - 2*IY + ZZ ");
    REQUIRE(mixed.size() == 3);
    CHECK(mixed[0].coeff == doctest::Approx(0.5));
    CHECK(mixed[0].word == "XZ");
    CHECK(mixed[1].coeff == doctest::Approx(-2.0));
    CHECK(mixed[1].word == "IY");
    CHECK(mixed[2].coeff == doctest::Approx(1.0));
    CHECK(mixed[2].word == "ZZ");

    const auto neg = parse_pauli_expression("-X");
    REQUIRE(neg.size() == 1);
    CHECK(neg[0].coeff == -1.0);

    CHECK_THROWS_AS(parse_pauli_expression(""), ParseError);
    CHECK_THROWS_AS(parse_pauli_expression("X+"), ParseError);
    CHECK_THROWS_AS(parse_pauli_expression("2X"), ParseError);
    CHECK_THROWS_AS(parse_pauli_expression("X Y"), ParseError);

    // parsed expression matches direct construction
    const Observable parsed("A", pauli_sum("A", parse_pauli_expression("X+Y")).matrix());
    const ComplexMatrix direct = qtest::pauli_x() + qtest::pauli_y();
    CHECK(max_abs_diff(parsed.matrix(), direct) == 0.0);
}

TEST_CASE("sim config validation") {
    SimConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.g = 0.0;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = SimConfig{};
    cfg.shots = 0;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = SimConfig{};
    cfg.grid.points = 32;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
    cfg = SimConfig{};
    cfg.sigma = -1.0;
    CHECK_THROWS_AS(cfg.validate(), ParameterError);
}
