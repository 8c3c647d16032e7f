#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "ietlab/permutation.hpp"
#include "ietlab/rauzy.hpp"

namespace ietlab {

// Rauzy diagram: the orbit closure of a permutation under the two induction
// moves.  Vertices are stored canonically (top row relabeled to A B C ...);
// the raw start permutation is kept alongside.
struct RauzyDiagram {
    Permutation raw_start;
    std::vector<Permutation> vertices;  // canonical forms, vertices[0] = canonical start
    struct Edge {
        std::size_t from, to;
        StepKind kind;
    };
    std::vector<Edge> edges;

    std::size_t size() const { return vertices.size(); }

    bool contains_rotation() const {
        for (const auto& v : vertices)
            if (v.is_rotation()) return true;
        return false;
    }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["start"] = raw_start.to_string();
        j["vertices"] = nlohmann::json::array();
        for (const auto& v : vertices) j["vertices"].push_back(v.to_string());
        j["edges"] = nlohmann::json::array();
        for (const auto& e : edges)
            j["edges"].push_back({{"from", e.from}, {"to", e.to}, {"kind", std::string(1, step_char(e.kind))}});
        return j;
    }

    // Graphviz digraph; nodes carry the canonical permutation strings.
    std::string to_dot() const {
        std::string s = "digraph rauzy {\n";
        for (std::size_t i = 0; i < vertices.size(); ++i)
            s += "  v" + std::to_string(i) + " [label=\"" + vertices[i].to_string() + "\"];\n";
        for (const auto& e : edges)
            s += "  v" + std::to_string(e.from) + " -> v" + std::to_string(e.to) + " [label=\"" +
                 step_char(e.kind) + "\"];\n";
        s += "}\n";
        return s;
    }
};

inline RauzyDiagram rauzy_class(const Permutation& start) {
    if (!start.irreducible()) throw ReduciblePermutation(start.to_string());
    RauzyDiagram dia;
    dia.raw_start = start;
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<Permutation> queue;
    auto intern = [&](const Permutation& p) {
        Permutation c = p.canonical();
        auto key = c.shape();
        auto it = index.find(key);
        if (it != index.end()) return it->second;
        std::size_t id = dia.vertices.size();
        index.emplace(std::move(key), id);
        dia.vertices.push_back(c);
        queue.push_back(std::move(c));
        return id;
    };
    intern(start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Permutation v = queue[head];  // copy: queue may reallocate
        std::size_t from = index.at(v.shape());
        dia.edges.push_back({from, intern(v.after_top_move()), StepKind::Top});
        dia.edges.push_back({from, intern(v.after_bottom_move()), StepKind::Bottom});
    }
    return dia;
}

inline bool is_rotation_class(const Permutation& p) {
    return rauzy_class(p).contains_rotation();
}

// All irreducible permutations on d letters in canonical form.
inline std::vector<Permutation> all_irreducible(std::size_t d) {
    std::vector<Permutation> out;
    std::vector<std::size_t> pos(d);
    for (std::size_t i = 0; i < d; ++i) pos[i] = i;
    do {
        Permutation p = Permutation::from_bottom_positions(pos);
        if (p.irreducible()) out.push_back(std::move(p));
    } while (std::next_permutation(pos.begin(), pos.end()));
    return out;
}

}  // namespace ietlab
