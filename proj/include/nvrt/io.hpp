// JSON readers/writers for the file formats: induced homomorphisms, chain
// data, PL circle maps, and class-sum results. The group-element grammar is
// shared with the text output and round-trips exactly.

#ifndef NVRT_IO_HPP
#define NVRT_IO_HPP

#include "nvrt/circle.hpp"

#include <json.hpp>

#include <fstream>
#include <string>

namespace nvrt {

using json = nlohmann::json;

// {"n":2, "generators":{"a":{"translations":["a^2","a^3"],"perm":[2,1]}}}
// perm lists the images: perm[i-1] = sigma(i).
inline json hom_to_json(const InducedHom& h) {
    json gens = json::object();
    for (const auto& [gen, img] : h.generator_images()) {
        json trans = json::array();
        for (const auto& t : img.translations()) trans.push_back(t.str(h.rank()));
        std::string name = h.rank() <= 1 ? "a" : "a" + std::to_string(gen);
        gens[name] = {{"translations", trans}, {"perm", img.perm().images()}};
    }
    return {{"n", h.n()}, {"generators", gens}};
}

inline InducedHom hom_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("generators"))
        throw parse_error("hom JSON needs \"n\" and \"generators\"");
    const int n = j.at("n").get<int>();
    std::map<int, SemidirectElement> images;
    int rank = 0;
    for (const auto& [name, spec] : j.at("generators").items()) {
        int gen;
        if (name == "a")
            gen = 1;
        else if (name.size() > 1 && name[0] == 'a')
            gen = std::stoi(name.substr(1));
        else
            throw parse_error("bad generator name: " + name);
        rank = std::max(rank, gen);
        std::vector<GroupElement> trans;
        for (const auto& t : spec.at("translations"))
            trans.push_back(GroupElement::parse(t.get<std::string>()));
        if (static_cast<int>(trans.size()) != n)
            throw parse_error("generator " + name + " needs " + std::to_string(n) +
                              " translations");
        std::vector<int> perm = spec.at("perm").get<std::vector<int>>();
        images.emplace(gen, SemidirectElement(std::move(trans), Permutation(perm)));
    }
    if (images.empty()) throw parse_error("hom JSON has no generators");
    return InducedHom(n, rank, std::move(images));
}

// {"n":2,"branches":[[["0","0"],["2/5","1"],...,["1","5/2"]],...]}
inline json map_to_json(const PLCircleMap& m) {
    json branches = json::array();
    for (const auto& br : m.branches()) {
        json pts = json::array();
        for (const auto& bp : br)
            pts.push_back(json::array({format_rational(bp.t), format_rational(bp.y)}));
        branches.push_back(pts);
    }
    return {{"n", m.n()}, {"branches", branches}};
}

inline PLCircleMap map_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("branches"))
        throw parse_error("map JSON needs \"n\" and \"branches\"");
    const int n = j.at("n").get<int>();
    std::vector<std::vector<BreakPoint>> branches;
    for (const auto& br : j.at("branches")) {
        std::vector<BreakPoint> pts;
        for (const auto& bp : br) {
            if (!bp.is_array() || bp.size() != 2)
                throw parse_error("breakpoint must be a [t, y] pair");
            pts.push_back({parse_rational(bp[0].get<std::string>()),
                           parse_rational(bp[1].get<std::string>())});
        }
        branches.push_back(std::move(pts));
    }
    return PLCircleMap(n, std::move(branches));
}

inline json matrix_to_json(const RingMatrix& m, int rank) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.at(i, j).str(rank));
        rows.push_back(row);
    }
    return rows;
}

inline RingMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw parse_error("matrix " + where + " must be a nonempty array");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    RingMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols)
            throw parse_error("ragged matrix " + where + " at row " + std::to_string(i));
        for (std::size_t c = 0; c < cols; ++c)
            m.at(i, c) = GroupRingElement::parse(j[i][c].get<std::string>());
    }
    return m;
}

// {"dim":1,"n":2,"hom":{...},"matrices":{"q0":{"k1":[[..]],..},..},
//  "boundaries":{"q1":[[..]]}}; matrix entry [i][j] is the coefficient of
// basis element i in the image of basis element j.
inline json chain_to_json(const ChainData& c) {
    const int rank = c.hom.rank();
    json mats = json::object();
    for (int q = 0; q <= c.dim; ++q) {
        json per_branch = json::object();
        for (int k = 1; k <= c.n; ++k)
            per_branch["k" + std::to_string(k)] = matrix_to_json(c.matrices[q][k - 1], rank);
        mats["q" + std::to_string(q)] = per_branch;
    }
    json out = {{"dim", c.dim}, {"n", c.n}, {"hom", hom_to_json(c.hom)}, {"matrices", mats}};
    if (!c.boundaries.empty()) {
        json bds = json::object();
        for (const auto& [q, bd] : c.boundaries)
            bds["q" + std::to_string(q)] = matrix_to_json(bd, rank);
        out["boundaries"] = bds;
    }
    if (!c.codomain_vertices.empty())
        out["basis"] = {{"codomain_vertices", c.codomain_vertices},
                        {"domain_vertices", c.domain_vertices}};
    return out;
}

inline ChainData chain_from_json(const json& j) {
    ChainData c;
    if (!j.contains("dim") || !j.contains("n") || !j.contains("hom") || !j.contains("matrices"))
        throw parse_error("chain JSON needs \"dim\", \"n\", \"hom\" and \"matrices\"");
    c.dim = j.at("dim").get<int>();
    c.n = j.at("n").get<int>();
    c.hom = hom_from_json(j.at("hom"));
    if (c.dim < 0) throw parse_error("negative dimension");
    c.matrices.assign(c.dim + 1, {});
    const json& mats = j.at("matrices");
    for (int q = 0; q <= c.dim; ++q) {
        const std::string qk = "q" + std::to_string(q);
        if (!mats.contains(qk)) throw parse_error("matrices missing " + qk);
        for (int k = 1; k <= c.n; ++k) {
            const std::string kk = "k" + std::to_string(k);
            if (!mats.at(qk).contains(kk))
                throw parse_error("matrices." + qk + " missing " + kk);
            c.matrices[q].push_back(matrix_from_json(mats.at(qk).at(kk), qk + "." + kk));
        }
    }
    if (j.contains("boundaries")) {
        for (const auto& [key, val] : j.at("boundaries").items()) {
            if (key.size() < 2 || key[0] != 'q')
                throw parse_error("bad boundary key: " + key);
            c.boundaries.emplace(std::stoi(key.substr(1)),
                                 matrix_from_json(val, "boundaries." + key));
        }
    }
    if (j.contains("basis")) {
        const json& b = j.at("basis");
        if (b.contains("codomain_vertices"))
            c.codomain_vertices = b.at("codomain_vertices").get<std::vector<std::string>>();
        if (b.contains("domain_vertices"))
            c.domain_vertices = b.at("domain_vertices").get<std::vector<std::string>>();
    }
    return c;
}

inline json class_sum_to_json(const ClassSum& s, int rank = 1) {
    json terms = json::array();
    for (const auto& [rep, t] : s.terms()) {
        terms.push_back({{"coeff", t.coeff.str()},
                         {"alpha", rep.alpha.str(rank)},
                         {"k", rep.k},
                         {"exact", t.exact}});
    }
    return terms;
}

inline ClassSum class_sum_from_json(const json& terms) {
    ClassSum s;
    for (const auto& t : terms) {
        ReidemeisterClass cls;
        cls.rep = MarkedPair(GroupElement::parse(t.at("alpha").get<std::string>()),
                             t.at("k").get<int>());
        cls.exact = t.at("exact").get<bool>();
        s.add(cls, Int(t.at("coeff").get<std::string>()));
    }
    return s;
}

inline json rt_result_to_json(const RTResult& r, int rank = 1) {
    return {{"rt", class_sum_to_json(r.rt, rank)},
            {"lefschetz", r.lefschetz.str()},
            {"nielsen_lower", r.nielsen_lower},
            {"exact", r.exact}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw parse_error("bad JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw parse_error("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

} // namespace nvrt

#endif
