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

// Scenario files: a JSON document with top-level keys
//   dim            Hilbert space dimension
//   initial        {"amplitudes": [[re, im], ...]} or {"preset": "x+"}
//   final_basis    {"vectors": [[[re, im], ...], ...]} or {"preset": "y"}
//   observables    [{"name": ..., "matrix": [[[re, im], ...], ...]}
//                   or {"name": ..., "pauli_string": "X + Y"}]
//   sim            optional {g, sigma, shots, seed, readout, grid}
// Complex numbers are always two-element [re, im] arrays. Parse failures
// carry the path of the offending field.

#pragma once

#include <string>

#include "quasidet/states.hpp"

namespace quasidet {

// Built-in named scenarios. "pauli_demo" is the worked example: i = |x+>,
// post-selection on the y basis, observables {X, Y, X+Y}.
Scenario builtin_scenario(const std::string &name);

Scenario parse_scenario(const std::string &text, double basis_tol = kDefaultBasisTol);

// Canonical serialization: presets are kept as presets when the states still
// match them bit for bit, everything else is written out explicitly, so
// parse(serialize(s)) reproduces s field for field.
std::string serialize_scenario(const Scenario &scenario);

// Reads a scenario file, or resolves a built-in name when no such file exists.
Scenario load_scenario(const std::string &path_or_name,
                       double basis_tol = kDefaultBasisTol);

} // namespace quasidet
