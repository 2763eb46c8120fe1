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

#include <cstdint>

namespace quasidet {

enum class Readout { position, momentum };

struct GridSpec {
    double half_width_in_sigmas = 12.0;
    std::uint64_t points = 4096;
};

// Knobs for the Gaussian-pointer measurement model.  `stream` is not part of
// the scenario file schema; callers running several measurements off one seed
// derive a distinct stream per task.
struct SimConfig {
    double g = 0.05;
    double sigma = 1.0;
    std::uint64_t shots = 200000;
    std::uint64_t seed = 1;
    Readout readout = Readout::position;
    GridSpec grid;
    std::uint64_t stream = 0;

    // Throws ParameterError when a field is out of range.
    void validate() const;
};

} // namespace quasidet
