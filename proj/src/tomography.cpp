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

#include "quasidet/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "quasidet/errors.hpp"
#include "quasidet/simulator.hpp"

namespace quasidet {

namespace {

// Streams for per-element simulator runs hang off the caller's stream one
// mixing level above the per-coupling substreams the extrapolator derives.
constexpr std::uint64_t kElementStreamTag = 1000;

} // namespace

const char *mode_name(ReconstructionMode mode) {
    return mode == ReconstructionMode::complex_full ? "complex" : "hermitian-part";
}

OperatorBasis::OperatorBasis(std::vector<ComplexMatrix> elements, double tol)
    : dim_(elements.empty() ? 0 : elements.front().rows()),
      elements_(std::move(elements)) {
    if (dim_ < 2) {
        throw ParameterError("operator basis needs dimension >= 2");
    }
    if (elements_.size() != dim_ * dim_) {
        throw ShapeError("operator basis must have exactly dim^2 elements, got " +
                         std::to_string(elements_.size()));
    }
    for (const ComplexMatrix &b : elements_) {
        if (b.rows() != dim_ || b.cols() != dim_) {
            throw ShapeError("operator basis elements must share one square shape");
        }
        if (hermiticity_deviation(b) > tol) {
            throw NonHermitianError("operator basis element is not Hermitian",
                                    hermiticity_deviation(b));
        }
    }
    // Gram matrix must be the identity: orthonormality and spanning in one check.
    for (std::size_t j = 0; j < elements_.size(); ++j) {
        for (std::size_t k = j; k < elements_.size(); ++k) {
            const cplx g = trace(matmul(elements_[j], elements_[k]));
            const double want = j == k ? 1.0 : 0.0;
            if (std::abs(g - want) > tol) {
                throw ParameterError("operator basis is not Hilbert-Schmidt orthonormal");
            }
        }
    }
}

OperatorBasis OperatorBasis::standard(std::size_t dim) {
    if (dim < 2) {
        throw ParameterError("operator basis needs dimension >= 2");
    }
    std::vector<ComplexMatrix> out;
    out.reserve(dim * dim);

    ComplexMatrix id = ComplexMatrix::identity(dim);
    const double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(dim));
    for (std::size_t j = 0; j < dim; ++j) {
        id(j, j) = cplx(inv_sqrt_d, 0.0);
    }
    out.push_back(id);

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = j + 1; k < dim; ++k) {
            ComplexMatrix sym(dim, dim);
            sym(j, k) = cplx(inv_sqrt2, 0.0);
            sym(k, j) = cplx(inv_sqrt2, 0.0);
            out.push_back(sym);

            ComplexMatrix asym(dim, dim);
            asym(j, k) = cplx(0.0, -inv_sqrt2);
            asym(k, j) = cplx(0.0, inv_sqrt2);
            out.push_back(asym);
        }
    }

    for (std::size_t l = 1; l < dim; ++l) {
        ComplexMatrix diag(dim, dim);
        const double norm = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
        for (std::size_t j = 0; j < l; ++j) {
            diag(j, j) = cplx(norm, 0.0);
        }
        diag(l, l) = cplx(-static_cast<double>(l) * norm, 0.0);
        out.push_back(diag);
    }

    return OperatorBasis(std::move(out));
}

std::vector<cplx> exact_basis_weak_values(const PureState &initial,
                                          const PureState &final_state,
                                          const OperatorBasis &basis,
                                          double ortho_eps) {
    if (initial.dim() != basis.dim() || final_state.dim() != basis.dim()) {
        throw ShapeError("state dimension does not match the operator basis");
    }
    const cplx ov = inner(final_state.ket(), initial.ket());
    if (std::norm(ov) < ortho_eps) {
        throw OrthogonalPostSelectionError(
            "post-selection probability below ortho_eps, weak values diverge",
            std::norm(ov));
    }
    std::vector<cplx> out;
    out.reserve(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const ComplexVector bi = apply(basis.element(k), initial.ket());
        out.push_back(inner(final_state.ket(), bi) / ov);
    }
    return out;
}

ReconstructionReport reconstruct_transient(const PureState &initial,
                                           const PureState &final_state,
                                           const OperatorBasis &basis,
                                           const std::vector<cplx> &weak_values,
                                           ReconstructionMode mode) {
    if (weak_values.size() != basis.size()) {
        throw ShapeError("need one weak value per basis element: expected " +
                         std::to_string(basis.size()) + ", got " +
                         std::to_string(weak_values.size()));
    }

    const std::size_t d = basis.dim();
    ComplexMatrix rec(d, d);
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const cplx w = mode == ReconstructionMode::complex_full
                           ? weak_values[k]
                           : cplx(weak_values[k].real(), 0.0);
        if (w == cplx(0.0, 0.0)) {
            continue;
        }
        const ComplexMatrix &b = basis.element(k);
        for (std::size_t r = 0; r < d; ++r) {
            for (std::size_t c = 0; c < d; ++c) {
                rec(r, c) += w * b(r, c);
            }
        }
    }

    ReconstructionReport report;
    report.reconstructed = std::move(rec);
    const TransientDensity td = transient_density(initial, final_state);
    ComplexMatrix target =
        mode == ReconstructionMode::hermitian_part ? hermitian_part(td) : td.matrix;
    ComplexMatrix diff = report.reconstructed;
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            diff(r, c) -= target(r, c);
        }
    }
    report.max_abs_error = max_abs(diff);
    report.target = std::move(target);
    report.mode = mode;
    report.source = "exact";
    report.weak_values = weak_values;
    return report;
}

ReconstructionReport tomography_from_simulation(const Scenario &scenario,
                                                const SimConfig &cfg,
                                                const std::vector<double> &couplings,
                                                std::size_t f_index) {
    if (f_index >= scenario.final_basis.size()) {
        throw ParameterError("post-selection index " + std::to_string(f_index) +
                             " is outside the final basis");
    }
    const PureState &i = scenario.initial;
    const PureState &f = scenario.final_basis.state(f_index);
    const OperatorBasis basis = OperatorBasis::standard(scenario.dim);

    std::vector<cplx> estimates;
    estimates.reserve(basis.size());
    double largest_ci = 0.0;
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const Observable element("B" + std::to_string(k), basis.element(k));
        SimConfig elem_cfg = cfg;
        elem_cfg.readout = Readout::position; // real parts only
        elem_cfg.stream = mix64(cfg.stream, kElementStreamTag + k);
        const Extrapolation ex = extrapolate_weak_value(element, i, f, elem_cfg, couplings);
        estimates.push_back(cplx(ex.estimate, 0.0));
        largest_ci = std::max(largest_ci, ex.ci);
    }

    ReconstructionReport report = reconstruct_transient(
        i, f, basis, estimates, ReconstructionMode::hermitian_part);
    report.source = "simulated";
    report.largest_ci = largest_ci;
    return report;
}

} // namespace quasidet
