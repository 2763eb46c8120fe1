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

#include "quasidet/states.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

#include "quasidet/errors.hpp"

namespace quasidet {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

ComplexMatrix pauli_matrix(char c) {
    switch (c) {
    case 'I':
        return ComplexMatrix::identity(2);
    case 'X':
        return ComplexMatrix(2, 2, {cplx(0), cplx(1), cplx(1), cplx(0)});
    case 'Y':
        return ComplexMatrix(2, 2, {cplx(0), cplx(0, -1), cplx(0, 1), cplx(0)});
    case 'Z':
        return ComplexMatrix(2, 2, {cplx(1), cplx(0), cplx(0), cplx(-1)});
    default:
        throw ParameterError(std::string("pauli: unknown letter '") + c + "'");
    }
}

} // namespace

PureState::PureState(ComplexVector ket, std::string label)
    : ket_(std::move(ket)), label_(std::move(label)) {
    if (ket_.dim() == 0) {
        throw ParameterError("PureState: empty amplitude vector");
    }
    input_norm_ = norm(ket_);
    // Guard against overflow in the rescale as well as true zero vectors.
    if (input_norm_ < 1e-150) {
        throw ParameterError("PureState: zero vector cannot be normalized");
    }
    const double inv = 1.0 / input_norm_;
    for (std::size_t k = 0; k < ket_.dim(); ++k) {
        ket_[k] *= inv;
    }
}

PureState PureState::preset(const std::string &name) {
    ComplexVector v(2);
    if (name == "z+") {
        v[0] = 1.0;
    } else if (name == "z-") {
        v[1] = 1.0;
    } else if (name == "x+") {
        v[0] = kInvSqrt2;
        v[1] = kInvSqrt2;
    } else if (name == "x-") {
        v[0] = kInvSqrt2;
        v[1] = -kInvSqrt2;
    } else if (name == "y+") {
        v[0] = kInvSqrt2;
        v[1] = cplx(0.0, kInvSqrt2);
    } else if (name == "y-") {
        v[0] = kInvSqrt2;
        v[1] = cplx(0.0, -kInvSqrt2);
    } else {
        throw ParameterError("unknown state preset '" + name + "'");
    }
    return PureState(std::move(v), name);
}

Observable::Observable(std::string name, ComplexMatrix matrix, double hermiticity_tol)
    : name_(std::move(name)), matrix_(std::move(matrix)) {
    if (!matrix_.square() || matrix_.rows() == 0) {
        throw ShapeError("Observable '" + name_ + "': matrix must be square and non-empty");
    }
    spectrum_ = eigh(matrix_, hermiticity_tol);

    const std::size_t d = matrix_.rows();
    double scale = 1.0;
    for (double w : spectrum_.eigenvalues) {
        scale = std::max(scale, std::abs(w));
    }
    const double cluster_gap = kDegeneracyTol * scale;

    // Consecutive eigenvalues (they arrive sorted) closer than the cluster
    // gap share one eigenspace; the projector sums the dyads of the group.
    std::size_t k = 0;
    while (k < d) {
        std::size_t end = k + 1;
        while (end < d && spectrum_.eigenvalues[end] - spectrum_.eigenvalues[end - 1] <= cluster_gap) {
            ++end;
        }
        Eigenspace es;
        es.multiplicity = end - k;
        double acc = 0.0;
        es.projector = ComplexMatrix(d, d);
        for (std::size_t col = k; col < end; ++col) {
            acc += spectrum_.eigenvalues[col];
            for (std::size_t r = 0; r < d; ++r) {
                for (std::size_t c = 0; c < d; ++c) {
                    es.projector(r, c) +=
                        spectrum_.eigenvectors(r, col) * std::conj(spectrum_.eigenvectors(c, col));
                }
            }
        }
        es.eigenvalue = acc / static_cast<double>(es.multiplicity);
        eigenspaces_.push_back(std::move(es));
        k = end;
    }

    // Projector sanity: idempotent, resolution of identity.
    ComplexMatrix sum(d, d);
    for (const Eigenspace &es : eigenspaces_) {
        const ComplexMatrix p2 = matmul(es.projector, es.projector);
        if (max_abs(p2 - es.projector) > 1e-10) {
            throw Error("Observable '" + name_ + "': eigenspace projector not idempotent");
        }
        sum = sum + es.projector;
    }
    if (max_abs(sum - ComplexMatrix::identity(d)) > 1e-10) {
        throw Error("Observable '" + name_ + "': eigenspace projectors do not resolve identity");
    }
}

FinalBasis::FinalBasis(std::vector<PureState> vectors, double ortho_tol)
    : vectors_(std::move(vectors)) {
    if (vectors_.empty()) {
        throw ParameterError("FinalBasis: no vectors");
    }
    const std::size_t d = vectors_.front().dim();
    if (vectors_.size() != d) {
        throw ShapeError("FinalBasis: need exactly dim vectors for a complete basis");
    }
    for (const PureState &v : vectors_) {
        if (v.dim() != d) {
            throw ShapeError("FinalBasis: mixed dimensions");
        }
    }
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
            const cplx ov = inner(vectors_[a].ket(), vectors_[b].ket());
            const double want = (a == b) ? 1.0 : 0.0;
            if (std::abs(ov - want) > ortho_tol) {
                throw ParameterError("FinalBasis: vectors " + std::to_string(a) + " and " +
                                     std::to_string(b) + " are not orthonormal");
            }
        }
    }
}

FinalBasis FinalBasis::computational(std::size_t dim) {
    std::vector<PureState> vs;
    vs.reserve(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        ComplexVector e(dim);
        e[k] = 1.0;
        vs.emplace_back(std::move(e), "e" + std::to_string(k));
    }
    return FinalBasis(std::move(vs));
}

FinalBasis FinalBasis::preset(const std::string &axis) {
    if (axis != "x" && axis != "y" && axis != "z") {
        throw ParameterError("unknown basis preset '" + axis + "'");
    }
    std::vector<PureState> vs;
    vs.push_back(PureState::preset(axis + "+"));
    vs.push_back(PureState::preset(axis + "-"));
    return FinalBasis(std::move(vs));
}

Observable pauli(const std::string &name) {
    if (name.size() != 1) {
        throw ParameterError("pauli: name must be one of I, X, Y, Z");
    }
    return Observable(name, pauli_matrix(name[0]));
}

Observable pauli_sum(const std::string &name, const std::vector<PauliTerm> &terms) {
    if (terms.empty()) {
        throw ParameterError("pauli_sum: no terms");
    }
    const std::size_t n = terms.front().word.size();
    if (n == 0) {
        throw ParameterError("pauli_sum: empty Pauli word");
    }
    std::size_t dim = 1;
    for (std::size_t q = 0; q < n; ++q) {
        dim *= 2;
    }
    ComplexMatrix acc(dim, dim);
    for (const PauliTerm &t : terms) {
        if (t.word.size() != n) {
            throw ParameterError("pauli_sum: words of unequal length");
        }
        if (!std::isfinite(t.coeff)) {
            throw ParameterError("pauli_sum: coefficient must be finite");
        }
        ComplexMatrix m = pauli_matrix(t.word[0]);
        for (std::size_t q = 1; q < n; ++q) {
            m = kron(m, pauli_matrix(t.word[q]));
        }
        acc = acc + cplx(t.coeff) * m;
    }
    return Observable(name, std::move(acc));
}

std::vector<PauliTerm> parse_pauli_expression(const std::string &expr) {
    std::vector<PauliTerm> terms;
    std::size_t pos = 0;
    const auto skip_ws = [&]() {
        while (pos < expr.size() && std::isspace(static_cast<unsigned char>(expr[pos]))) {
            ++pos;
        }
    };

    skip_ws();
    if (pos == expr.size()) {
        throw ParseError("empty Pauli expression", "pauli_string");
    }
    while (pos < expr.size()) {
        double sign = 1.0;
        if (expr[pos] == '+' || expr[pos] == '-') {
            sign = (expr[pos] == '-') ? -1.0 : 1.0;
            ++pos;
            skip_ws();
        } else if (!terms.empty()) {
            throw ParseError("expected '+' or '-' between terms", "pauli_string");
        }

        double coeff = 1.0;
        const std::size_t term_start = pos;
        if (pos < expr.size() &&
            (std::isdigit(static_cast<unsigned char>(expr[pos])) || expr[pos] == '.')) {
            char *end = nullptr;
            coeff = std::strtod(expr.c_str() + pos, &end);
            pos = static_cast<std::size_t>(end - expr.c_str());
            skip_ws();
            if (pos >= expr.size() || expr[pos] != '*') {
                throw ParseError("expected '*' after coefficient", "pauli_string");
            }
            ++pos;
            skip_ws();
        }

        std::string word;
        while (pos < expr.size() && (expr[pos] == 'I' || expr[pos] == 'X' || expr[pos] == 'Y' ||
                                     expr[pos] == 'Z')) {
            word += expr[pos];
            ++pos;
        }
        if (word.empty()) {
            throw ParseError("expected a Pauli word (letters I, X, Y, Z) at position " +
                                 std::to_string(term_start),
                             "pauli_string");
        }
        terms.push_back(PauliTerm{sign * coeff, std::move(word)});
        skip_ws();
    }
    return terms;
}

double born_weight(const PureState &i, const PureState &f) {
    if (i.dim() != f.dim()) {
        throw ShapeError("born_weight: dimensions disagree");
    }
    return std::norm(inner(f.ket(), i.ket()));
}

double expectation(const Observable &a, const PureState &s) {
    if (a.dim() != s.dim()) {
        throw ShapeError("expectation: dimensions disagree");
    }
    const cplx v = inner(s.ket(), apply(a.matrix(), s.ket()));
    if (std::abs(v.imag()) > 1e-12) {
        throw Error("expectation: imaginary residue " + std::to_string(v.imag()) +
                    " exceeds 1e-12");
    }
    return v.real();
}

} // namespace quasidet
