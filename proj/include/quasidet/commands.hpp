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

// Command layer behind the `quasidet` executable. Exit code contract:
// 0 success, 1 input or parameter error (raised as exceptions here, mapped
// by the dispatcher), 2 when an identity check fails its tolerance.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "quasidet/report.hpp"
#include "quasidet/scenario.hpp"
#include "quasidet/states.hpp"
#include "quasidet/uncertainty.hpp"

namespace quasidet {

struct CommandOptions {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    std::optional<std::vector<double>> couplings;
    double tol_identity = kDefaultIdentityTol;
    double tol_basis = kDefaultBasisTol;
    std::string format = "csv"; // csv | json
};

// Exact weak-value statistics plus identity checks; exit 2 on check failure.
ReportBundle cmd_analyze(const Scenario &scenario, const CommandOptions &opts);

// Pointer simulation: per-outcome records and zero-coupling extrapolation.
ReportBundle cmd_simulate(const Scenario &scenario, const CommandOptions &opts);

// mode: "complex" | "hermitian" (exact weak values) | "simulated".
// Post-selects on the first final-basis outcome.
ReportBundle cmd_tomography(const Scenario &scenario, const std::string &mode,
                            const CommandOptions &opts);

// Built-in worked example: analyze + simulate plus the paradox summary.
ReportBundle cmd_demo_pauli(const CommandOptions &opts);

// Full argv-level dispatcher (argv without the program name). Returns the
// process exit code; never throws.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace quasidet
