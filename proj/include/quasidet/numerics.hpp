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

/**
 * @file
 * Self-contained dense complex linear algebra and randomness kernel.
 *
 * Everything here is sized for small Hilbert spaces (d <= 64). Values are
 * immutable after construction and all operations are pure, so they can be
 * shared freely between threads. SeededRng instances are the one exception:
 * each logical task must own its own stream, derived via substream().
 */

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace quasidet {

using cplx = std::complex<double>;

inline constexpr double kDefaultHermiticityTol = 1e-10;

/// Dense complex vector of amplitudes.
class ComplexVector {
  public:
    ComplexVector() = default;
    explicit ComplexVector(std::size_t dim) : entries_(dim) {}
    /// Validates that every entry is finite.
    explicit ComplexVector(std::vector<cplx> entries);

    std::size_t dim() const { return entries_.size(); }
    cplx &operator[](std::size_t i) { return entries_[i]; }
    const cplx &operator[](std::size_t i) const { return entries_[i]; }
    const std::vector<cplx> &entries() const { return entries_; }

  private:
    std::vector<cplx> entries_;
};

/// Dense row-major complex matrix. Operators in this library are always
/// square; the rectangular case exists only transiently inside algorithms.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    /// Row-major entries; validates that every entry is finite.
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

    static ComplexMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    cplx &operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    const cplx &operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    const std::vector<cplx> &entries() const { return entries_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> entries_;
};

/// Result of a Hermitian eigendecomposition: h = V diag(lambda) V^dagger.
/// Eigenvalues ascending; eigenvectors are the (orthonormal) columns of V.
struct EighResult {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

/// Deterministic pseudo-random stream addressed by (seed, stream-id).
///
/// The same (seed, stream) pair yields a bit-identical sample sequence on
/// every run and platform: the engine is the fully specified std::mt19937_64
/// and all variate transforms are implemented here rather than taken from
/// the (implementation-defined) standard distributions.
class SeededRng {
  public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream = 0);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream() const { return stream_; }

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal variate (Box-Muller; two uniforms per draw).
    double gaussian();

    /// Independent child stream. Children with distinct ids never share
    /// state with each other or with the parent.
    SeededRng substream(std::uint64_t id) const;

  private:
    std::uint64_t seed_;
    std::uint64_t stream_;
    std::mt19937_64 engine_;
};

/// Stateless 64-bit mix used for stream-id derivation.
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

// ---------------------------------------------------------------------------
// Matrix and vector operations
// ---------------------------------------------------------------------------

/// Matrix product. Throws ShapeError if inner dimensions disagree.
ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b);

/// Conjugate transpose.
ComplexMatrix adjoint(const ComplexMatrix &a);

/// Sum of the diagonal. Throws ShapeError for non-square input.
cplx trace(const ComplexMatrix &a);

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Throws NonHermitianError (with the measured deviation) when
/// max|h - h^dagger| exceeds hermiticity_tol. Output is deterministic.
EighResult eigh(const ComplexMatrix &h, double hermiticity_tol = kDefaultHermiticityTol);

/// Unit vector drawn from the Haar-uniform distribution on the sphere.
ComplexVector haar_random_state(std::size_t dim, SeededRng &rng);

/// Normal variate with the given mean and width. Throws ParameterError for
/// sigma <= 0 or non-finite parameters.
double sample_gaussian(double mean, double sigma, SeededRng &rng);

// Small helpers shared by the physics layers.

ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(cplx scale, const ComplexMatrix &a);

/// <u|v> with the conjugation on the first argument.
cplx inner(const ComplexVector &u, const ComplexVector &v);

/// |u><v| as a matrix.
ComplexMatrix outer(const ComplexVector &u, const ComplexVector &v);

/// m |v>.
ComplexVector apply(const ComplexMatrix &m, const ComplexVector &v);

double norm(const ComplexVector &v);

/// max_{ij} |a_ij|.
double max_abs(const ComplexMatrix &a);

double frobenius_norm(const ComplexMatrix &a);

/// max-norm of (a - a^dagger); zero for exactly Hermitian input.
double hermiticity_deviation(const ComplexMatrix &a);

/// Kronecker product (used for Pauli strings on multi-qubit spaces).
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

} // namespace quasidet
