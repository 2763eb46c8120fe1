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

#pragma once

#include <stdexcept>
#include <string>

namespace quasidet {

/// Base class for every error thrown by this library.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &what) : std::runtime_error(what) {}
};

/// Dimension mismatch between operands (matrix shapes, vector lengths).
class ShapeError : public Error {
  public:
    explicit ShapeError(const std::string &what) : Error(what) {}
};

/// Invalid scalar parameter (non-positive width, zero shots, ...).
class ParameterError : public Error {
  public:
    explicit ParameterError(const std::string &what) : Error(what) {}
};

/// Input to a Hermitian-only routine failed the Hermiticity check.
/// Carries the measured max-norm deviation from self-adjointness.
class NonHermitianError : public Error {
  public:
    NonHermitianError(const std::string &what, double deviation)
        : Error(what), deviation_(deviation) {}
    double deviation() const { return deviation_; }

  private:
    double deviation_;
};

/// Post-selected quantities are undefined when the final state is
/// (numerically) orthogonal to the initial state. Carries |<f|i>|^2.
class OrthogonalPostSelectionError : public Error {
  public:
    OrthogonalPostSelectionError(const std::string &what, double overlap_sq)
        : Error(what), overlap_sq_(overlap_sq) {}
    double overlap_sq() const { return overlap_sq_; }

  private:
    double overlap_sq_;
};

/// The simulated post-selection kept (essentially) no probability mass.
class PostSelectionStarvedError : public Error {
  public:
    explicit PostSelectionStarvedError(const std::string &what) : Error(what) {}
};

/// Scenario file failed to parse or validate. Carries the path of the
/// offending field (e.g. "/observables/0/matrix/1/2").
class ParseError : public Error {
  public:
    ParseError(const std::string &what, std::string field_path)
        : Error(what + " (at " + field_path + ")"), field_path_(std::move(field_path)) {}
    const std::string &field_path() const { return field_path_; }

  private:
    std::string field_path_;
};

} // namespace quasidet
