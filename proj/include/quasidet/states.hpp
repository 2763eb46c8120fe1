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
/// Physical object layer: normalized pure states, validated Hermitian
/// observables with cached spectral data, orthonormal post-selection bases,
/// and the Scenario aggregate consumed by the analysis pipeline.  Every type
/// validates its invariants at construction and is immutable afterwards.

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "quasidet/numerics.hpp"
#include "quasidet/sim_config.hpp"

namespace quasidet {

inline constexpr double kDefaultBasisTol = 1e-10;
inline constexpr double kDegeneracyTol = 1e-8;

// Unit-norm ket.  Construction rescales the input to unit norm and keeps the
// factor that was divided out; zero (or denormal-tiny) vectors are rejected.
class PureState {
  public:
    explicit PureState(ComplexVector ket, std::string label = "");

    // Named dim-2 states: "x+", "x-", "y+", "y-", "z+", "z-".
    static PureState preset(const std::string &name);

    std::size_t dim() const { return ket_.dim(); }
    const ComplexVector &ket() const { return ket_; }
    const std::string &label() const { return label_; }
    // Norm of the vector the caller passed in (the normalization divisor).
    double input_norm() const { return input_norm_; }

  private:
    ComplexVector ket_;
    std::string label_;
    double input_norm_ = 1.0;
};

struct Eigenspace {
    double eigenvalue = 0.0;
    ComplexMatrix projector;
    std::size_t multiplicity = 0;
};

// Hermitian observable with its spectral decomposition computed eagerly.
// Eigenvalues within kDegeneracyTol (relative to the spectral scale) are
// merged into one eigenspace so downstream quasi-probabilities are
// gauge-invariant under degeneracy.
class Observable {
  public:
    Observable(std::string name, ComplexMatrix matrix,
               double hermiticity_tol = kDefaultHermiticityTol);

    const std::string &name() const { return name_; }
    const ComplexMatrix &matrix() const { return matrix_; }
    std::size_t dim() const { return matrix_.rows(); }
    const EighResult &spectrum() const { return spectrum_; }
    const std::vector<Eigenspace> &eigenspaces() const { return eigenspaces_; }

  private:
    std::string name_;
    ComplexMatrix matrix_;
    EighResult spectrum_;
    std::vector<Eigenspace> eigenspaces_;
};

// Complete orthonormal set of post-selection outcomes {|f>}.
class FinalBasis {
  public:
    explicit FinalBasis(std::vector<PureState> vectors, double ortho_tol = kDefaultBasisTol);

    static FinalBasis computational(std::size_t dim);
    // Axis presets at dim 2: "x" -> {x+, x-}, likewise "y", "z".
    static FinalBasis preset(const std::string &axis);

    std::size_t size() const { return vectors_.size(); }
    std::size_t dim() const { return vectors_.front().dim(); }
    const PureState &state(std::size_t f) const { return vectors_.at(f); }
    const std::vector<PureState> &states() const { return vectors_; }

  private:
    std::vector<PureState> vectors_;
};

struct Scenario {
    std::size_t dim = 0;
    PureState initial;
    FinalBasis final_basis;
    std::vector<Observable> observables;
    std::optional<SimConfig> sim;
};

// One additive term of a Pauli-word expansion, e.g. {0.5, "XZ"}.
struct PauliTerm {
    double coeff = 1.0;
    std::string word;
};

// Single-letter Pauli observable at dim 2.
Observable pauli(const std::string &name);

// Real linear combination of same-length Pauli words (Kronecker products),
// acting on dim 2^n.
Observable pauli_sum(const std::string &name, const std::vector<PauliTerm> &terms);

// Parses "X+Y", "0.5*XZ - 2*IY", ... into terms; whitespace insensitive.
std::vector<PauliTerm> parse_pauli_expression(const std::string &expr);

// |<f|i>|^2
double born_weight(const PureState &i, const PureState &f);

// <s|A|s>; the imaginary residue must stay below 1e-12 and is dropped.
double expectation(const Observable &a, const PureState &s);

} // namespace quasidet
