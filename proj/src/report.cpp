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

#include "quasidet/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "quasidet/errors.hpp"

namespace quasidet {

namespace {

using json = nlohmann::ordered_json;

std::string csv_escape(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_cell(const json &v) {
    if (v.is_null()) {
        return "nan";
    }
    if (v.is_boolean()) {
        return v.get<bool>() ? "true" : "false";
    }
    if (v.is_number_unsigned()) {
        return std::to_string(v.get<std::uint64_t>());
    }
    if (v.is_number_integer()) {
        return std::to_string(v.get<std::int64_t>());
    }
    if (v.is_number_float()) {
        return format_double(v.get<double>());
    }
    if (v.is_string()) {
        return csv_escape(v.get<std::string>());
    }
    throw Error("unsupported CSV cell type");
}

std::string render_csv(const json &rows) {
    std::string out;
    if (rows.empty()) {
        return out;
    }
    bool first = true;
    for (const auto &item : rows.front().items()) {
        if (!first) {
            out += ',';
        }
        out += csv_escape(item.key());
        first = false;
    }
    out += '\n';
    for (const json &row : rows) {
        first = true;
        for (const auto &item : row.items()) {
            if (!first) {
                out += ',';
            }
            out += csv_cell(item.value());
            first = false;
        }
        out += '\n';
    }
    return out;
}

json meta_to_json(const ReportMeta &meta) {
    json m;
    m["tool"] = "quasidet";
    m["version"] = kToolVersion;
    m["command"] = meta.command;
    m["format"] = meta.format;
    if (meta.seed) {
        m["seed"] = *meta.seed;
    }
    if (meta.shots) {
        m["shots"] = *meta.shots;
    }
    if (!meta.couplings.empty()) {
        m["couplings"] = meta.couplings;
    }
    m["tolerances"] = {{"identity", meta.tol_identity}, {"basis", meta.tol_basis}};
    return m;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

nlohmann::ordered_json &ReportBuilder::table(const std::string &name) {
    for (auto &t : tables_) {
        if (t.first == name) {
            return t.second;
        }
    }
    tables_.emplace_back(name, json::array());
    return tables_.back().second;
}

std::vector<ReportFile> ReportBuilder::finish() const {
    std::vector<ReportFile> files;
    if (meta_.format == "json") {
        json report;
        report["meta"] = meta_to_json(meta_);
        json tables;
        for (const auto &t : tables_) {
            tables[t.first] = t.second;
        }
        report["tables"] = std::move(tables);
        files.push_back({"report.json", report.dump(2) + "\n"});
    } else {
        for (const auto &t : tables_) {
            files.push_back({t.first + ".csv", render_csv(t.second)});
        }
    }

    json manifest = meta_to_json(meta_);
    json names = json::array();
    for (const ReportFile &f : files) {
        names.push_back(f.name);
    }
    manifest["files"] = std::move(names);
    files.push_back({"manifest.json", manifest.dump(2) + "\n"});
    return files;
}

void write_bundle(const ReportBundle &bundle, const std::string &out_dir) {
    std::filesystem::create_directories(out_dir);
    for (const ReportFile &f : bundle.files) {
        const std::filesystem::path path = std::filesystem::path(out_dir) / f.name;
        std::ofstream out(path, std::ios::binary);
        if (!out) {
            throw Error("cannot write report file '" + path.string() + "'");
        }
        out << f.content;
    }
}

} // namespace quasidet
