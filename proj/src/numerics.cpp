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

#include "quasidet/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "quasidet/errors.hpp"

namespace quasidet {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_all_finite(const std::vector<cplx> &entries, const char *what) {
    for (const cplx &z : entries) {
        if (!finite(z)) {
            throw ParameterError(std::string(what) + ": entries must be finite");
        }
    }
}

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

} // namespace

ComplexVector::ComplexVector(std::vector<cplx> entries) : entries_(std::move(entries)) {
    require_all_finite(entries_, "ComplexVector");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows * cols) {
        throw ShapeError("ComplexMatrix: entry count does not match rows*cols");
    }
    require_all_finite(entries_, "ComplexMatrix");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

SeededRng::SeededRng(std::uint64_t seed, std::uint64_t stream)
    : seed_(seed), stream_(stream),
      engine_(splitmix64(splitmix64(seed) ^ splitmix64(stream ^ 0xA02BDBF7BB3C0A7ULL))) {}

double SeededRng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double SeededRng::gaussian() {
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log1p(-u1));
    return r * std::cos(kTwoPi * u2);
}

SeededRng SeededRng::substream(std::uint64_t id) const {
    return SeededRng(seed_, mix64(stream_, id));
}

std::uint64_t mix64(std::uint64_t a, std::uint64_t b) {
    return splitmix64(splitmix64(a) ^ (0x9E3779B97F4A7C15ULL + splitmix64(b ^ 0x6A09E667F3BCC909ULL)));
}

ComplexMatrix matmul(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.cols() != b.rows()) {
        throw ShapeError("matmul: inner dimensions disagree");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0, 0.0)) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                out(i, j) += aik * b(k, j);
            }
        }
    }
    return out;
}

ComplexMatrix adjoint(const ComplexMatrix &a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(j, i) = std::conj(a(i, j));
        }
    }
    return out;
}

cplx trace(const ComplexMatrix &a) {
    if (!a.square()) {
        throw ShapeError("trace: matrix must be square");
    }
    cplx sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        sum += a(i, i);
    }
    return sum;
}

EighResult eigh(const ComplexMatrix &h, double hermiticity_tol) {
    if (!h.square()) {
        throw ShapeError("eigh: matrix must be square");
    }
    const double dev = hermiticity_deviation(h);
    if (!(dev <= hermiticity_tol)) {
        throw NonHermitianError("eigh: input is not Hermitian within tolerance", dev);
    }
    const std::size_t n = h.rows();

    // Work on the Hermitian average so a within-tolerance asymmetry cannot
    // leak into the rotations.
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            m(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double frob = frobenius_norm(m);
    const double stop = 1e-14 * std::max(1.0, frob);

    auto off_norm = [&]() {
        double acc = 0.0;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                acc += std::norm(m(p, q));
            }
        }
        return std::sqrt(2.0 * acc);
    };

    const int max_sweeps = 100;
    for (int sweep = 0; sweep < max_sweeps && off_norm() > stop; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = m(p, q);
                const double a = std::abs(apq);
                if (a == 0.0) {
                    continue;
                }
                const double app = m(p, p).real();
                const double aqq = m(q, q).real();
                const double beta = (aqq - app) / (2.0 * a);
                const double t = (beta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(beta) + std::sqrt(beta * beta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const cplx phase = apq / a;
                const cplx se = s * phase;
                const cplx se_conj = s * std::conj(phase);

                m(p, p) = app - t * a;
                m(q, q) = aqq + t * a;
                m(p, q) = 0.0;
                m(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == q) {
                        continue;
                    }
                    const cplx mkp = m(k, p);
                    const cplx mkq = m(k, q);
                    m(k, p) = c * mkp - se_conj * mkq;
                    m(k, q) = se * mkp + c * mkq;
                    m(p, k) = std::conj(m(k, p));
                    m(q, k) = std::conj(m(k, q));
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx vkp = v(k, p);
                    const cplx vkq = v(k, q);
                    v(k, p) = c * vkp - se_conj * vkq;
                    v(k, q) = se * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return m(i, i).real() < m(j, j).real();
    });

    EighResult out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col) {
        out.eigenvalues[col] = m(order[col], order[col]).real();
        for (std::size_t row = 0; row < n; ++row) {
            out.eigenvectors(row, col) = v(row, order[col]);
        }
    }
    return out;
}

ComplexVector haar_random_state(std::size_t dim, SeededRng &rng) {
    if (dim == 0) {
        throw ParameterError("haar_random_state: dim must be positive");
    }
    ComplexVector psi(dim);
    double norm_sq = 0.0;
    do {
        norm_sq = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            psi[i] = cplx(rng.gaussian(), rng.gaussian());
            norm_sq += std::norm(psi[i]);
        }
    } while (norm_sq == 0.0);
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (std::size_t i = 0; i < dim; ++i) {
        psi[i] *= inv;
    }
    return psi;
}

double sample_gaussian(double mean, double sigma, SeededRng &rng) {
    if (!(sigma > 0.0) || !std::isfinite(sigma) || !std::isfinite(mean)) {
        throw ParameterError("sample_gaussian: sigma must be positive and finite");
    }
    return mean + sigma * rng.gaussian();
}

ComplexMatrix operator+(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("matrix add: shapes disagree");
    }
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j) + b(i, j);
        }
    }
    return out;
}

ComplexMatrix operator-(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw ShapeError("matrix subtract: shapes disagree");
    }
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = a(i, j) - b(i, j);
        }
    }
    return out;
}

ComplexMatrix operator*(cplx scale, const ComplexMatrix &a) {
    ComplexMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out(i, j) = scale * a(i, j);
        }
    }
    return out;
}

cplx inner(const ComplexVector &u, const ComplexVector &v) {
    if (u.dim() != v.dim()) {
        throw ShapeError("inner: dimensions disagree");
    }
    cplx acc = 0.0;
    for (std::size_t i = 0; i < u.dim(); ++i) {
        acc += std::conj(u[i]) * v[i];
    }
    return acc;
}

ComplexMatrix outer(const ComplexVector &u, const ComplexVector &v) {
    ComplexMatrix out(u.dim(), v.dim());
    for (std::size_t i = 0; i < u.dim(); ++i) {
        for (std::size_t j = 0; j < v.dim(); ++j) {
            out(i, j) = u[i] * std::conj(v[j]);
        }
    }
    return out;
}

ComplexVector apply(const ComplexMatrix &m, const ComplexVector &v) {
    if (m.cols() != v.dim()) {
        throw ShapeError("apply: dimensions disagree");
    }
    ComplexVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            acc += m(i, j) * v[j];
        }
        out[i] = acc;
    }
    return out;
}

double norm(const ComplexVector &v) {
    double acc = 0.0;
    for (std::size_t i = 0; i < v.dim(); ++i) {
        acc += std::norm(v[i]);
    }
    return std::sqrt(acc);
}

double max_abs(const ComplexMatrix &a) {
    double m = 0.0;
    for (const cplx &z : a.entries()) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

double frobenius_norm(const ComplexMatrix &a) {
    double acc = 0.0;
    for (const cplx &z : a.entries()) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

double hermiticity_deviation(const ComplexMatrix &a) {
    if (!a.square()) {
        throw ShapeError("hermiticity_deviation: matrix must be square");
    }
    double dev = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            dev = std::max(dev, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return dev;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0, 0.0)) {
                continue;
            }
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

} // namespace quasidet
