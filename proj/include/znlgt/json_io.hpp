#pragma once

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "znlgt/encoding.hpp"
#include "znlgt/gauss.hpp"
#include "znlgt/lattice.hpp"
#include "znlgt/pauli.hpp"
#include "znlgt/stabilizer.hpp"
#include "znlgt/termlist.hpp"

namespace znlgt {

using nlohmann::json;

inline json to_json(const GenPauli& p) {
    return json{{"N", p.levels}, {"phase", p.phase}, {"x", p.xexp}, {"z", p.zexp}};
}

inline GenPauli genpauli_from_json(const json& j) {
    return GenPauli(j.at("N").get<int>(), j.at("phase").get<int>(),
                    j.at("x").get<std::vector<int>>(), j.at("z").get<std::vector<int>>());
}

inline json to_json(const StabilizerCode& code) {
    json gens = json::array(), lx = json::array(), lz = json::array();
    for (const auto& g : code.generators) gens.push_back(to_json(g));
    for (const auto& g : code.logical_x) lx.push_back(to_json(g));
    for (const auto& g : code.logical_z) lz.push_back(to_json(g));
    return json{{"N", code.levels}, {"n", code.qudits}, {"generators", gens},
                {"logical_x", lx}, {"logical_z", lz}};
}

inline StabilizerCode code_from_json(const json& j) {
    std::vector<GenPauli> gens, lx, lz;
    for (const auto& g : j.at("generators")) gens.push_back(genpauli_from_json(g));
    for (const auto& g : j.at("logical_x")) lx.push_back(genpauli_from_json(g));
    for (const auto& g : j.at("logical_z")) lz.push_back(genpauli_from_json(g));
    return new_code(j.at("N").get<int>(), j.at("n").get<int>(), std::move(gens), std::move(lx),
                    std::move(lz));
}

inline json to_json(const LatticeSpec& spec) {
    json j{{"dims", spec.dims},
           {"levels", spec.levels},
           {"boundary", spec.boundary == Boundary::periodic ? "periodic" : "open"}};
    j["extent"] = spec.dims == 1 ? json::array({spec.extent[0]})
                                 : json::array({spec.extent[0], spec.extent[1]});
    return j;
}

inline LatticeSpec lattice_from_json(const json& j) {
    LatticeSpec spec;
    spec.dims = j.at("dims").get<int>();
    spec.levels = j.at("levels").get<int>();
    const auto ext = j.at("extent").get<std::vector<int>>();
    spec.extent[0] = ext.at(0);
    spec.extent[1] = spec.dims == 2 ? ext.at(1) : 1;
    const std::string b = j.at("boundary").get<std::string>();
    if (b == "periodic")
        spec.boundary = Boundary::periodic;
    else if (b == "open")
        spec.boundary = Boundary::open;
    else
        throw std::invalid_argument("boundary must be 'periodic' or 'open'");
    spec.validate();
    return spec;
}

/// Gauss-code file: the validated code plus the lattice it came from (the
/// Hamiltonian builders need the geometry).
inline json to_json(const GaussCode& gc) {
    json j = to_json(gc.code);
    j["lattice"] = to_json(gc.index.spec);
    return j;
}

inline GaussCode gauss_code_from_json(const json& j) {
    const LatticeSpec spec = lattice_from_json(j.at("lattice"));
    GaussCode rebuilt = build_code(spec);
    const StabilizerCode loaded = code_from_json(j);
    if (!(loaded.levels == rebuilt.code.levels && loaded.qudits == rebuilt.code.qudits &&
          loaded.generators == rebuilt.code.generators &&
          loaded.logical_x == rebuilt.code.logical_x && loaded.logical_z == rebuilt.code.logical_z))
        throw std::invalid_argument("code file does not match the code built from its lattice");
    return rebuilt;
}

inline json to_json(const TermList& t, const std::string& basis = "") {
    json terms = json::array();
    for (const auto& term : t.terms)
        terms.push_back(json{{"re", term.coeff.real()}, {"im", term.coeff.imag()},
                             {"pauli", to_json(term.op)}});
    json j{{"N", t.levels}, {"n_qudits", t.qudits}, {"terms", terms}};
    if (!basis.empty()) j["basis"] = basis;
    return j;
}

inline TermList termlist_from_json(const json& j) {
    TermList t(j.at("N").get<int>(), j.at("n_qudits").get<int>());
    for (const auto& term : j.at("terms"))
        t.append(Complex(term.at("re").get<double>(), term.at("im").get<double>()),
                 genpauli_from_json(term.at("pauli")));
    return t;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

/// Flat binary matrix format: int64 dimension followed by dim*dim
/// little-endian complex128 entries in row-major order.
inline void save_matrix_binary(const std::string& path, const DenseOperator& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    const std::int64_t dim = m.rows();
    out.write(reinterpret_cast<const char*>(&dim), sizeof(dim));
    for (std::int64_t r = 0; r < dim; ++r)
        for (std::int64_t c = 0; c < dim; ++c) {
            const double re = m(r, c).real(), im = m(r, c).imag();
            out.write(reinterpret_cast<const char*>(&re), sizeof(re));
            out.write(reinterpret_cast<const char*>(&im), sizeof(im));
        }
}

inline DenseOperator load_matrix_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::int64_t dim = 0;
    in.read(reinterpret_cast<char*>(&dim), sizeof(dim));
    DenseOperator m(dim, dim);
    for (std::int64_t r = 0; r < dim; ++r)
        for (std::int64_t c = 0; c < dim; ++c) {
            double re = 0.0, im = 0.0;
            in.read(reinterpret_cast<char*>(&re), sizeof(re));
            in.read(reinterpret_cast<char*>(&im), sizeof(im));
            m(r, c) = Complex(re, im);
        }
    if (!in) throw std::runtime_error("truncated matrix file " + path);
    return m;
}

} // namespace znlgt
