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

// Tomographic reconstruction of the transient density operator by linear
// inversion over a Hilbert-Schmidt orthonormal Hermitian operator basis.
// The expansion coefficients Tr(R B_k) are exactly the weak values of the
// basis elements, so R is recovered from d^2 weak measurements: complex
// weak values give the full non-Hermitian operator, their real parts give
// its Hermitian part.

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "quasidet/numerics.hpp"
#include "quasidet/sim_config.hpp"
#include "quasidet/states.hpp"
#include "quasidet/weak_values.hpp"

namespace quasidet {

enum class ReconstructionMode { complex_full, hermitian_part };

const char *mode_name(ReconstructionMode mode);

// d^2 Hermitian matrices, orthonormal under Tr(B_j B_k) = delta_jk.
class OperatorBasis {
  public:
    explicit OperatorBasis(std::vector<ComplexMatrix> elements,
                           double tol = kDefaultBasisTol);

    // Generalized Gell-Mann construction: I/sqrt(d), then the symmetric and
    // antisymmetric off-diagonal pairs, then the traceless diagonals.
    static OperatorBasis standard(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return elements_.size(); }
    const ComplexMatrix &element(std::size_t k) const { return elements_[k]; }
    const std::vector<ComplexMatrix> &elements() const { return elements_; }

  private:
    std::size_t dim_;
    std::vector<ComplexMatrix> elements_;
};

struct ReconstructionReport {
    ComplexMatrix reconstructed;
    ComplexMatrix target;
    double max_abs_error = 0.0;
    ReconstructionMode mode = ReconstructionMode::complex_full;
    std::string source;            // "exact" or "simulated"
    double largest_ci = 0.0;       // per-element confidence radius, simulated only
    std::vector<cplx> weak_values; // expansion coefficients as supplied
};

// Exact expansion coefficients <f|B_k|i> / <f|i> for every basis element.
std::vector<cplx> exact_basis_weak_values(const PureState &initial,
                                          const PureState &final_state,
                                          const OperatorBasis &basis,
                                          double ortho_eps = kOrthoEps);

ReconstructionReport
reconstruct_transient(const PureState &initial, const PureState &final_state,
                      const OperatorBasis &basis,
                      const std::vector<cplx> &weak_values,
                      ReconstructionMode mode = ReconstructionMode::complex_full);

// Measures every basis element with the pointer simulator (position readout,
// zero-coupling extrapolation) and reconstructs the Hermitian part from the
// estimated real parts. f_index selects the post-selection outcome from the
// scenario's final basis.
ReconstructionReport tomography_from_simulation(const Scenario &scenario,
                                                const SimConfig &cfg,
                                                const std::vector<double> &couplings,
                                                std::size_t f_index = 0);

} // namespace quasidet
