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

#include "quasidet/scenario.hpp"

#include <fstream>
#include <sstream>
#include <utility>

#include "json.hpp"
#include "quasidet/errors.hpp"

namespace quasidet {

namespace {

using json = nlohmann::ordered_json;

std::string idx(const std::string &path, std::size_t k) {
    return path + "[" + std::to_string(k) + "]";
}

const json &field(const json &obj, const char *key, const std::string &path) {
    if (!obj.is_object()) {
        throw ParseError("expected an object", path);
    }
    const auto it = obj.find(key);
    if (it == obj.end()) {
        throw ParseError("missing required field '" + std::string(key) + "'", path);
    }
    return *it;
}

void reject_unknown_keys(const json &obj, std::initializer_list<const char *> known,
                         const std::string &path) {
    for (const auto &item : obj.items()) {
        bool ok = false;
        for (const char *k : known) {
            if (item.key() == k) {
                ok = true;
                break;
            }
        }
        if (!ok) {
            throw ParseError("unknown field '" + item.key() + "'", path);
        }
    }
}

double num_at(const json &v, const std::string &path) {
    if (!v.is_number()) {
        throw ParseError("expected a number", path);
    }
    return v.get<double>();
}

std::uint64_t uint_at(const json &v, const std::string &path) {
    if (!v.is_number_unsigned()) {
        throw ParseError("expected a non-negative integer", path);
    }
    return v.get<std::uint64_t>();
}

cplx cplx_at(const json &v, const std::string &path) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw ParseError("complex numbers are two-element [re, im] arrays", path);
    }
    return cplx(v[0].get<double>(), v[1].get<double>());
}

ComplexVector vector_at(const json &v, std::size_t dim, const std::string &path) {
    if (!v.is_array() || v.size() != dim) {
        throw ParseError("expected " + std::to_string(dim) + " amplitude pairs", path);
    }
    ComplexVector out(dim);
    for (std::size_t k = 0; k < dim; ++k) {
        out[k] = cplx_at(v[k], idx(path, k));
    }
    return out;
}

ComplexMatrix matrix_at(const json &v, std::size_t dim, const std::string &path) {
    if (!v.is_array() || v.size() != dim) {
        throw ParseError("expected " + std::to_string(dim) + " matrix rows", path);
    }
    ComplexMatrix out(dim, dim);
    for (std::size_t r = 0; r < dim; ++r) {
        const json &row = v[r];
        const std::string row_path = idx(path, r);
        if (!row.is_array() || row.size() != dim) {
            throw ParseError("expected " + std::to_string(dim) + " entries", row_path);
        }
        for (std::size_t c = 0; c < dim; ++c) {
            out(r, c) = cplx_at(row[c], idx(row_path, c));
        }
    }
    return out;
}

PureState parse_initial(const json &v, std::size_t dim) {
    reject_unknown_keys(v, {"amplitudes", "preset"}, "initial");
    const bool has_amp = v.contains("amplitudes");
    const bool has_preset = v.contains("preset");
    if (has_amp == has_preset) {
        throw ParseError("give exactly one of 'amplitudes' or 'preset'", "initial");
    }
    if (has_preset) {
        const json &p = v["preset"];
        if (!p.is_string()) {
            throw ParseError("expected a preset name", "initial.preset");
        }
        if (dim != 2) {
            throw ParseError("state presets exist only at dim 2", "initial.preset");
        }
        try {
            return PureState::preset(p.get<std::string>());
        } catch (const Error &e) {
            throw ParseError(e.what(), "initial.preset");
        }
    }
    try {
        return PureState(vector_at(v["amplitudes"], dim, "initial.amplitudes"), "i");
    } catch (const ParseError &) {
        throw;
    } catch (const Error &e) {
        throw ParseError(e.what(), "initial.amplitudes");
    }
}

FinalBasis parse_final_basis(const json &v, std::size_t dim, double basis_tol) {
    reject_unknown_keys(v, {"vectors", "preset"}, "final_basis");
    const bool has_vec = v.contains("vectors");
    const bool has_preset = v.contains("preset");
    if (has_vec == has_preset) {
        throw ParseError("give exactly one of 'vectors' or 'preset'", "final_basis");
    }
    if (has_preset) {
        const json &p = v["preset"];
        if (!p.is_string()) {
            throw ParseError("expected a preset name", "final_basis.preset");
        }
        const std::string name = p.get<std::string>();
        try {
            if (name == "computational") {
                return FinalBasis::computational(dim);
            }
            if (dim != 2) {
                throw ParameterError("axis presets exist only at dim 2");
            }
            return FinalBasis::preset(name);
        } catch (const Error &e) {
            throw ParseError(e.what(), "final_basis.preset");
        }
    }
    const json &vecs = v["vectors"];
    if (!vecs.is_array() || vecs.size() != dim) {
        throw ParseError("expected " + std::to_string(dim) + " basis vectors",
                         "final_basis.vectors");
    }
    std::vector<PureState> states;
    for (std::size_t f = 0; f < dim; ++f) {
        const std::string path = idx("final_basis.vectors", f);
        try {
            states.emplace_back(vector_at(vecs[f], dim, path), "f" + std::to_string(f));
        } catch (const ParseError &) {
            throw;
        } catch (const Error &e) {
            throw ParseError(e.what(), path);
        }
    }
    try {
        return FinalBasis(std::move(states), basis_tol);
    } catch (const Error &e) {
        throw ParseError(e.what(), "final_basis.vectors");
    }
}

Observable parse_observable(const json &v, std::size_t dim, const std::string &path) {
    reject_unknown_keys(v, {"name", "matrix", "pauli_string"}, path);
    const json &name_v = field(v, "name", path);
    if (!name_v.is_string()) {
        throw ParseError("expected a string", path + ".name");
    }
    const std::string name = name_v.get<std::string>();
    const bool has_matrix = v.contains("matrix");
    const bool has_pauli = v.contains("pauli_string");
    if (has_matrix == has_pauli) {
        throw ParseError("give exactly one of 'matrix' or 'pauli_string'", path);
    }
    if (has_matrix) {
        const ComplexMatrix m = matrix_at(v["matrix"], dim, path + ".matrix");
        try {
            return Observable(name, m);
        } catch (const Error &e) {
            throw ParseError(e.what(), path + ".matrix");
        }
    }
    const json &expr = v["pauli_string"];
    if (!expr.is_string()) {
        throw ParseError("expected a Pauli expression string", path + ".pauli_string");
    }
    const Observable obs = [&]() -> Observable {
        try {
            return pauli_sum(name, parse_pauli_expression(expr.get<std::string>()));
        } catch (const Error &e) {
            throw ParseError(e.what(), path + ".pauli_string");
        }
    }();
    if (obs.dim() != dim) {
        throw ParseError("Pauli word acts on dimension " + std::to_string(obs.dim()) +
                             ", scenario has dim " + std::to_string(dim),
                         path + ".pauli_string");
    }
    return obs;
}

SimConfig parse_sim(const json &v) {
    reject_unknown_keys(v, {"g", "sigma", "shots", "seed", "readout", "grid"}, "sim");
    SimConfig cfg;
    if (v.contains("g")) {
        cfg.g = num_at(v["g"], "sim.g");
    }
    if (v.contains("sigma")) {
        cfg.sigma = num_at(v["sigma"], "sim.sigma");
    }
    if (v.contains("shots")) {
        cfg.shots = uint_at(v["shots"], "sim.shots");
    }
    if (v.contains("seed")) {
        cfg.seed = uint_at(v["seed"], "sim.seed");
    }
    if (v.contains("readout")) {
        const json &r = v["readout"];
        if (!r.is_string()) {
            throw ParseError("expected \"position\" or \"momentum\"", "sim.readout");
        }
        const std::string name = r.get<std::string>();
        if (name == "position") {
            cfg.readout = Readout::position;
        } else if (name == "momentum") {
            cfg.readout = Readout::momentum;
        } else {
            throw ParseError("unknown readout '" + name + "'", "sim.readout");
        }
    }
    if (v.contains("grid")) {
        const json &grid = v["grid"];
        reject_unknown_keys(grid, {"half_width_in_sigmas", "points"}, "sim.grid");
        if (grid.contains("half_width_in_sigmas")) {
            cfg.grid.half_width_in_sigmas =
                num_at(grid["half_width_in_sigmas"], "sim.grid.half_width_in_sigmas");
        }
        if (grid.contains("points")) {
            cfg.grid.points = uint_at(grid["points"], "sim.grid.points");
        }
    }
    try {
        cfg.validate();
    } catch (const Error &e) {
        throw ParseError(e.what(), "sim");
    }
    return cfg;
}

bool kets_equal(const ComplexVector &a, const ComplexVector &b) {
    if (a.dim() != b.dim()) {
        return false;
    }
    for (std::size_t k = 0; k < a.dim(); ++k) {
        if (a[k] != b[k]) {
            return false;
        }
    }
    return true;
}

bool matches_preset(const PureState &s) {
    if (s.dim() != 2) {
        return false;
    }
    for (const char *name : {"x+", "x-", "y+", "y-", "z+", "z-"}) {
        if (s.label() == name && kets_equal(s.ket(), PureState::preset(name).ket())) {
            return true;
        }
    }
    return false;
}

// Name of the basis preset the given basis still matches bit for bit, or "".
std::string basis_preset_name(const FinalBasis &basis) {
    if (basis.dim() == 2) {
        for (const char *axis : {"x", "y", "z"}) {
            const FinalBasis ref = FinalBasis::preset(axis);
            if (basis.state(0).label() == ref.state(0).label() &&
                basis.state(1).label() == ref.state(1).label() &&
                kets_equal(basis.state(0).ket(), ref.state(0).ket()) &&
                kets_equal(basis.state(1).ket(), ref.state(1).ket())) {
                return axis;
            }
        }
    }
    const FinalBasis comp = FinalBasis::computational(basis.dim());
    for (std::size_t f = 0; f < basis.size(); ++f) {
        if (basis.state(f).label() != comp.state(f).label() ||
            !kets_equal(basis.state(f).ket(), comp.state(f).ket())) {
            return "";
        }
    }
    return "computational";
}

json complex_to_json(const cplx &z) { return json::array({z.real(), z.imag()}); }

json vector_to_json(const ComplexVector &v) {
    json out = json::array();
    for (std::size_t k = 0; k < v.dim(); ++k) {
        out.push_back(complex_to_json(v[k]));
    }
    return out;
}

json matrix_to_json(const ComplexMatrix &m) {
    json out = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        out.push_back(row);
    }
    return out;
}

} // namespace

Scenario builtin_scenario(const std::string &name) {
    if (name == "pauli_demo") {
        return Scenario{2,
                        PureState::preset("x+"),
                        FinalBasis::preset("y"),
                        {pauli("X"), pauli("Y"),
                         pauli_sum("X+Y", {{1.0, "X"}, {1.0, "Y"}})},
                        SimConfig{}};
    }
    throw ParameterError("unknown built-in scenario '" + name + "'");
}

Scenario parse_scenario(const std::string &text, double basis_tol) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ParseError(e.what(), "document");
    }
    if (!doc.is_object()) {
        throw ParseError("scenario must be a JSON object", "document");
    }
    reject_unknown_keys(doc, {"dim", "initial", "final_basis", "observables", "sim"},
                        "document");

    const std::uint64_t dim_raw = uint_at(field(doc, "dim", "document"), "dim");
    if (dim_raw < 1) {
        throw ParseError("dim must be at least 1", "dim");
    }
    const std::size_t dim = static_cast<std::size_t>(dim_raw);

    PureState initial = parse_initial(field(doc, "initial", "document"), dim);
    FinalBasis basis =
        parse_final_basis(field(doc, "final_basis", "document"), dim, basis_tol);

    const json &obs_v = field(doc, "observables", "document");
    if (!obs_v.is_array()) {
        throw ParseError("expected an array of observables", "observables");
    }
    std::vector<Observable> observables;
    for (std::size_t k = 0; k < obs_v.size(); ++k) {
        observables.push_back(parse_observable(obs_v[k], dim, idx("observables", k)));
    }

    std::optional<SimConfig> sim;
    if (doc.contains("sim")) {
        sim = parse_sim(doc["sim"]);
    }

    return Scenario{dim, std::move(initial), std::move(basis), std::move(observables),
                    std::move(sim)};
}

std::string serialize_scenario(const Scenario &scenario) {
    json doc;
    doc["dim"] = scenario.dim;

    if (matches_preset(scenario.initial)) {
        doc["initial"] = {{"preset", scenario.initial.label()}};
    } else {
        doc["initial"] = {{"amplitudes", vector_to_json(scenario.initial.ket())}};
    }

    const std::string basis_name = basis_preset_name(scenario.final_basis);
    if (!basis_name.empty()) {
        doc["final_basis"] = {{"preset", basis_name}};
    } else {
        json vecs = json::array();
        for (std::size_t f = 0; f < scenario.final_basis.size(); ++f) {
            vecs.push_back(vector_to_json(scenario.final_basis.state(f).ket()));
        }
        doc["final_basis"] = {{"vectors", std::move(vecs)}};
    }

    json obs = json::array();
    for (const Observable &a : scenario.observables) {
        obs.push_back({{"name", a.name()}, {"matrix", matrix_to_json(a.matrix())}});
    }
    doc["observables"] = std::move(obs);

    if (scenario.sim) {
        const SimConfig &cfg = *scenario.sim;
        doc["sim"] = {
            {"g", cfg.g},
            {"sigma", cfg.sigma},
            {"shots", cfg.shots},
            {"seed", cfg.seed},
            {"readout", cfg.readout == Readout::position ? "position" : "momentum"},
            {"grid",
             {{"half_width_in_sigmas", cfg.grid.half_width_in_sigmas},
              {"points", cfg.grid.points}}},
        };
    }

    return doc.dump(2) + "\n";
}

Scenario load_scenario(const std::string &path_or_name, double basis_tol) {
    std::ifstream in(path_or_name);
    if (!in) {
        try {
            return builtin_scenario(path_or_name);
        } catch (const Error &) {
            throw Error("cannot open scenario file '" + path_or_name +
                        "' and no built-in scenario has that name");
        }
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), basis_tol);
}

} // namespace quasidet
