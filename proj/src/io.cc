// Copyright 2026 The qmask Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qmask/io.h"

#include <fstream>
#include <sstream>

#include "qmask/errors.h"

namespace qmask::io {

namespace {

std::string at(const std::string &path, const std::string &key) {
    return path + "/" + key;
}
std::string at(const std::string &path, size_t index) {
    return path + "/" + std::to_string(index);
}

const Json &field(const Json &j, const std::string &key, const std::string &path) {
    if (!j.is_object()) {
        throw SchemaError(path.empty() ? "/" : path, "expected an object");
    }
    const auto it = j.find(key);
    if (it == j.end()) {
        throw SchemaError(at(path, key), "missing field");
    }
    return *it;
}

const Json &array(const Json &j, const std::string &path) {
    if (!j.is_array()) {
        throw SchemaError(path, "expected an array");
    }
    return j;
}

int integer(const Json &j, const std::string &path) {
    if (!j.is_number_integer()) {
        throw SchemaError(path, "expected an integer");
    }
    return j.get<int>();
}

double number(const Json &j, const std::string &path) {
    if (!j.is_number()) {
        throw SchemaError(path, "expected a number");
    }
    return j.get<double>();
}

std::vector<int> int_list(const Json &j, const std::string &path) {
    std::vector<int> out;
    for (size_t i = 0; i < array(j, path).size(); ++i) {
        out.push_back(integer(j[i], at(path, i)));
    }
    return out;
}

Dims decode_dims(const Json &j, const std::string &path) {
    try {
        return Dims(int_list(j, path));
    } catch (const DimensionMismatch &e) {
        throw SchemaError(path, e.what());
    }
}

Json encode_dims(const Dims &dims) {
    return Json(dims.values());
}

Json encode_reals(const std::vector<double> &values) {
    return Json(values);
}

Json encode_matrices(const std::vector<ComplexMatrix> &ms) {
    Json out = Json::array();
    for (const auto &m : ms) {
        out.push_back(encode(m));
    }
    return out;
}

}  // namespace

Json encode(Complex z) {
    return Json::array({z.real(), z.imag()});
}

Json encode(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Index c = 0; c < m.cols(); ++c) {
            row.push_back(encode(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json encode_state(const StateVector &v) {
    Json out = Json::array();
    for (Index i = 0; i < v.size(); ++i) {
        out.push_back(encode(v(i)));
    }
    return out;
}

Json encode(const LatinSquare &square) {
    return {{"order", square.order()}, {"cells", square.rows()}};
}

Json encode(const MolsPair &pair) {
    return {{"first", encode(pair.first)}, {"second", encode(pair.second)}};
}

Json encode(const Masker &s) {
    return {{"input_dim", s.input_dim()},
            {"dims", encode_dims(s.dims())},
            {"matrix", encode(s.matrix())},
            {"provenance", to_string(s.provenance())}};
}

Json encode(const CodeSubspace &code) {
    Json basis = Json::array();
    for (Index c = 0; c < code.dim(); ++c) {
        basis.push_back(encode_state(code.basis().col(c)));
    }
    return {{"dims", encode_dims(code.dims())}, {"basis", std::move(basis)}};
}

Json encode(const StateSet &set) {
    Json states = Json::array();
    for (const auto &s : set.states) {
        states.push_back(encode_state(s));
    }
    return {{"label", set.label}, {"states", std::move(states)}};
}

Json encode(const KrausChannel &ch) {
    Json out = {{"dims", encode_dims(ch.dims())}, {"kraus", encode_matrices(ch.kraus())}};
    if (ch.erasure_index()) {
        out["erasure_index"] = *ch.erasure_index();
    }
    return out;
}

Json encode(const MaskingReport &r) {
    return {{"verdict", r.verdict},
            {"tol", r.tol},
            {"worst_deviation", r.worst()},
            {"per_subsystem_worst_deviation", encode_reals(r.worst_deviation)},
            {"per_subsystem_pairwise_max", encode_reals(r.pairwise_max)},
            {"reference_marginals", encode_matrices(r.reference_marginals)},
            {"samples", r.samples},
            {"deterministic", r.deterministic}};
}

Json encode(const KLReport &r) {
    Json lambdas = Json::array();
    for (const auto &l : r.lambdas) {
        lambdas.push_back(encode(l));
    }
    return {{"subsystem", r.subsystem},
            {"local_dim", r.local_dim},
            {"verdict", r.verdict},
            {"tol", r.tol},
            {"worst_deviation", r.worst},
            {"deviations", encode_reals(r.deviations)},
            {"lambdas", std::move(lambdas)}};
}

Json encode(const EquivalenceReport &r) {
    Json kl = Json::array();
    for (const auto &k : r.kl) {
        kl.push_back(encode(k));
    }
    return {{"masking", encode(r.masking)},
            {"kl", std::move(kl)},
            {"masking_verdict", r.masking_verdict},
            {"kl_verdict", r.kl_verdict},
            {"agree", r.agree}};
}

Json encode(const FidelityStats &f) {
    return {{"worst_fidelity", f.worst}, {"mean_fidelity", f.mean}, {"samples", f.samples}};
}

Json encode(const SearchResult &r) {
    Json restarts = Json::array();
    for (const auto &s : r.restarts) {
        restarts.push_back({{"seed", s.seed},
                            {"initial_defect", s.initial_defect},
                            {"final_defect", s.final_defect},
                            {"iterations", s.iterations},
                            {"termination", s.termination}});
    }
    return {{"kind", "evidence"},
            {"input_dim", r.problem.input_dim},
            {"dims", encode_dims(r.problem.dims)},
            {"best_defect", r.best_defect},
            {"best_restart", r.best_restart},
            {"best_isometry", encode(r.best_isometry)},
            {"restarts", std::move(restarts)},
            {"seed", r.seed},
            {"max_iters", r.max_iters}};
}

Complex decode_complex(const Json &j, const std::string &path) {
    if (!j.is_array() || j.size() != 2) {
        throw SchemaError(path, "complex scalar must be a two-element array [re, im]");
    }
    return {number(j[0], at(path, 0)), number(j[1], at(path, 1))};
}

ComplexMatrix decode_matrix(const Json &j, const std::string &path) {
    const auto &rows = array(j, path);
    if (rows.empty()) {
        throw SchemaError(path, "matrix has no rows");
    }
    const size_t cols = array(rows[0], at(path, 0)).size();
    ComplexMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(cols));
    for (size_t r = 0; r < rows.size(); ++r) {
        const auto rp = at(path, r);
        const auto &row = array(rows[r], rp);
        if (row.size() != cols) {
            throw SchemaError(rp, "ragged matrix row: expected " + std::to_string(cols) + " entries");
        }
        for (size_t c = 0; c < cols; ++c) {
            out(static_cast<Index>(r), static_cast<Index>(c)) = decode_complex(row[c], at(rp, c));
        }
    }
    return out;
}

StateVector decode_state(const Json &j, const std::string &path) {
    const auto &entries = array(j, path);
    StateVector out(static_cast<Index>(entries.size()));
    for (size_t i = 0; i < entries.size(); ++i) {
        out(static_cast<Index>(i)) = decode_complex(entries[i], at(path, i));
    }
    return out;
}

LatinSquare decode_square(const Json &j, const std::string &path) {
    const int order = integer(field(j, "order", path), at(path, "order"));
    int base = 0;
    if (j.contains("base")) {
        base = integer(j["base"], at(path, "base"));
        if (base != 0 && base != 1) {
            throw SchemaError(at(path, "base"), "base must be 0 or 1");
        }
    }
    const auto cp = at(path, "cells");
    const auto &rows = array(field(j, "cells", path), cp);
    if (static_cast<int>(rows.size()) != order) {
        throw SchemaError(cp, "declared order " + std::to_string(order) + " but " + std::to_string(rows.size()) +
                                  " rows");
    }
    std::vector<int> cells;
    for (size_t r = 0; r < rows.size(); ++r) {
        const auto row = int_list(rows[r], at(cp, r));
        if (static_cast<int>(row.size()) != order) {
            throw SchemaError(at(cp, r), "declared order " + std::to_string(order) + " but " +
                                             std::to_string(row.size()) + " columns");
        }
        for (size_t c = 0; c < row.size(); ++c) {
            const int v = row[c] - base;
            if (v < 0 || v >= order) {
                throw SchemaError(at(at(cp, r), c), "entry out of range for order " + std::to_string(order));
            }
            cells.push_back(v);
        }
    }
    return LatinSquare(order, std::move(cells));
}

MolsPair decode_pair(const Json &j, const std::string &path) {
    return {decode_square(field(j, "first", path), at(path, "first")),
            decode_square(field(j, "second", path), at(path, "second"))};
}

Masker decode_masker(const Json &j, const std::string &path) {
    const int k = integer(field(j, "input_dim", path), at(path, "input_dim"));
    const Dims dims = decode_dims(field(j, "dims", path), at(path, "dims"));
    const ComplexMatrix m = decode_matrix(field(j, "matrix", path), at(path, "matrix"));
    if (m.cols() != k) {
        throw SchemaError(at(path, "matrix"), "matrix has " + std::to_string(m.cols()) + " columns, input_dim is " +
                                                  std::to_string(k));
    }
    if (m.rows() != dims.total()) {
        throw SchemaError(at(path, "matrix"), "matrix has " + std::to_string(m.rows()) + " rows, dims span " +
                                                  std::to_string(dims.total()));
    }
    Provenance prov = Provenance::user;
    if (j.contains("provenance")) {
        const auto pp = at(path, "provenance");
        if (!j["provenance"].is_string()) {
            throw SchemaError(pp, "expected a string");
        }
        try {
            prov = provenance_from_string(j["provenance"].get<std::string>());
        } catch (const std::invalid_argument &e) {
            throw SchemaError(pp, e.what());
        }
    }
    try {
        return Masker(dims, m, prov);
    } catch (const NotIsometric &e) {
        throw SchemaError(at(path, "matrix"), e.what());
    }
}

CodeSubspace decode_code(const Json &j, const std::string &path) {
    const Dims dims = decode_dims(field(j, "dims", path), at(path, "dims"));
    const auto bp = at(path, "basis");
    const auto &vectors = array(field(j, "basis", path), bp);
    if (vectors.empty()) {
        throw SchemaError(bp, "code basis is empty");
    }
    ComplexMatrix basis(dims.total(), static_cast<Index>(vectors.size()));
    for (size_t c = 0; c < vectors.size(); ++c) {
        const StateVector v = decode_state(vectors[c], at(bp, c));
        if (v.size() != dims.total()) {
            throw SchemaError(at(bp, c), "vector length does not match dims");
        }
        basis.col(static_cast<Index>(c)) = v;
    }
    try {
        return CodeSubspace(dims, std::move(basis));
    } catch (const NotIsometric &e) {
        throw SchemaError(bp, e.what());
    }
}

StateSet decode_state_set(const Json &j, const std::string &path) {
    StateSet out;
    if (j.contains("label") && j["label"].is_string()) {
        out.label = j["label"].get<std::string>();
    }
    const auto sp = at(path, "states");
    const auto &states = array(field(j, "states", path), sp);
    for (size_t i = 0; i < states.size(); ++i) {
        out.states.push_back(decode_state(states[i], at(sp, i)));
    }
    try {
        out.validate();
    } catch (const std::invalid_argument &e) {
        throw SchemaError(sp, e.what());
    }
    return out;
}

KrausChannel decode_channel(const Json &j, const std::string &path) {
    const Dims dims = decode_dims(field(j, "dims", path), at(path, "dims"));
    const auto kp = at(path, "kraus");
    const auto &ops = array(field(j, "kraus", path), kp);
    std::vector<ComplexMatrix> kraus;
    for (size_t i = 0; i < ops.size(); ++i) {
        kraus.push_back(decode_matrix(ops[i], at(kp, i)));
    }
    std::optional<int> index;
    if (j.contains("erasure_index")) {
        index = integer(j["erasure_index"], at(path, "erasure_index"));
    }
    try {
        return KrausChannel(dims, std::move(kraus), index);
    } catch (const std::invalid_argument &e) {
        throw SchemaError(kp, e.what());
    }
}

Json read_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw SchemaError("", "cannot open '" + path + "'");
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw SchemaError("", "'" + path + "' is not valid JSON: " + e.what());
    }
}

void write_file(const std::string &path, const Json &payload) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    out << payload.dump(2) << "\n";
    if (!out) {
        throw std::runtime_error("write to '" + path + "' failed");
    }
}

}  // namespace qmask::io
