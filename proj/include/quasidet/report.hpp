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

// Deterministic report emission. A command produces named tables of rows;
// the builder renders them either as one CSV file per table or as a single
// JSON report, always accompanied by a manifest. No timestamps, fixed row
// and key order, floats at 17 significant digits: identical inputs with the
// same seed give byte-identical bytes.

#pragma once

#include <cstdint>
#include <list>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace quasidet {

inline constexpr const char *kToolVersion = "1.0.0";

std::string format_double(double v); // %.17g

struct ReportMeta {
    std::string command;
    std::string format = "csv"; // csv | json
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> shots;
    std::vector<double> couplings; // empty when no simulation ran
    double tol_identity = 0.0;
    double tol_basis = 0.0;
};

struct ReportFile {
    std::string name;
    std::string content;
};

struct ReportBundle {
    std::string summary; // human-readable, printed by the dispatcher
    std::vector<ReportFile> files;
    int exit_code = 0;
};

class ReportBuilder {
  public:
    explicit ReportBuilder(ReportMeta meta) : meta_(std::move(meta)) {}

    // Rows are appended as ordered objects; every row of one table must use
    // the same keys in the same order (they become the CSV header).
    // References stay valid as further tables are created.
    nlohmann::ordered_json &table(const std::string &name);

    std::vector<ReportFile> finish() const;

  private:
    ReportMeta meta_;
    std::list<std::pair<std::string, nlohmann::ordered_json>> tables_;
};

void write_bundle(const ReportBundle &bundle, const std::string &out_dir);

} // namespace quasidet
