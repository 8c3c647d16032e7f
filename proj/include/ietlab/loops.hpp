#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ietlab/matrix.hpp"
#include "ietlab/rauzy.hpp"
#include "ietlab/substitution.hpp"

namespace ietlab {

namespace detail {

// Positivity pattern of a d x d nonnegative matrix as a bitmask (d <= 8).
inline std::uint64_t positivity_pattern(const IntMatrix& m) {
    std::uint64_t mask = 0;
    std::size_t d = m.dim();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (m(i, j) > 0) mask |= 1ull << (i * d + j);
    return mask;
}

// Pattern of E * B for an elementary E = I + E_{rc}: row r also picks up row c.
inline std::uint64_t apply_elementary_pattern(std::uint64_t b, std::size_t d, std::size_t r,
                                              std::size_t c) {
    std::uint64_t row_mask = ((d == 8) ? ~0ull : ((1ull << d) - 1));
    std::uint64_t row_c = (b >> (c * d)) & row_mask;
    return b | (row_c << (r * d));
}

inline std::pair<std::size_t, std::size_t> elementary_indices(StepKind kind, std::size_t at,
                                                              std::size_t ab) {
    // top: I + E_{ab,at}; bottom: I + E_{at,ab}
    return kind == StepKind::Top ? std::make_pair(ab, at) : std::make_pair(at, ab);
}

}  // namespace detail

// Shortest loop at `start` whose path matrix B_gamma is strictly positive.
// Breadth-first over (permutation, positivity pattern) states; the pattern
// evolves as a function of itself, so visited-state pruning is sound.
inline RauzyPath find_positive_loop(const Permutation& start, std::size_t budget = 200000) {
    if (!start.irreducible()) throw ReduciblePermutation(start.to_string());
    std::size_t d = start.size();
    if (d > 8) throw ConfigError("positive-loop search supports d <= 8");
    const std::uint64_t full = (d * d == 64) ? ~0ull : ((1ull << (d * d)) - 1);

    struct Node {
        Permutation perm;
        std::uint64_t pattern;
        std::size_t parent;
        StepKind kind;
        std::size_t winner, loser;
    };
    std::vector<Node> nodes;
    std::set<std::pair<std::vector<std::size_t>, std::uint64_t>> seen;
    auto key_of = [](const Permutation& p) {
        std::vector<std::size_t> k = p.shape();
        for (std::size_t i = 0; i < p.size(); ++i) k.push_back(p.top_at(i));
        return k;
    };
    std::uint64_t id_pattern = 0;
    for (std::size_t i = 0; i < d; ++i) id_pattern |= 1ull << (i * d + i);
    nodes.push_back({start, id_pattern, SIZE_MAX, StepKind::Top, 0, 0});
    seen.insert({key_of(start), id_pattern});

    auto start_key = key_of(start);
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        if (head >= budget) throw BudgetExceeded("positive-loop search budget exhausted");
        for (StepKind kind : {StepKind::Top, StepKind::Bottom}) {
            Node cur = nodes[head];
            std::size_t at = cur.perm.top_last(), ab = cur.perm.bottom_last();
            Permutation next =
                kind == StepKind::Top ? cur.perm.after_top_move() : cur.perm.after_bottom_move();
            auto [r, c] = detail::elementary_indices(kind, at, ab);
            std::uint64_t pat = detail::apply_elementary_pattern(cur.pattern, d, r, c);
            std::size_t winner = kind == StepKind::Top ? at : ab;
            std::size_t loser = kind == StepKind::Top ? ab : at;
            if (pat == full && key_of(next) == start_key) {
                // reconstruct the loop
                std::vector<RauzyStep> steps;
                RauzyStep last;
                last.kind = kind;
                last.winner = winner;
                last.loser = loser;
                last.from = cur.perm;
                last.to = next;
                steps.push_back(last);
                std::size_t idx = head;
                while (nodes[idx].parent != SIZE_MAX) {
                    const Node& n = nodes[idx];
                    RauzyStep s;
                    s.kind = n.kind;
                    s.winner = n.winner;
                    s.loser = n.loser;
                    s.from = nodes[n.parent].perm;
                    s.to = n.perm;
                    steps.push_back(s);
                    idx = n.parent;
                }
                std::reverse(steps.begin(), steps.end());
                RauzyPath path{start, std::move(steps)};
                path.validate();
                return path;
            }
            auto k = std::make_pair(key_of(next), pat);
            if (seen.insert(k).second)
                nodes.push_back({std::move(next), pat, head, kind, winner, loser});
        }
    }
    throw BudgetExceeded("positive-loop search exhausted without a positive loop");
}

// A loop viewed as a word over the substitution alphabet: the j-th letter is
// the step substitution of the j-th edge.  Simplicity = no proper prefix of
// the letter sequence equals the suffix of the same length.
inline bool is_simple_word(const std::vector<Substitution>& letters) {
    std::size_t m = letters.size();
    for (std::size_t i = 1; i < m; ++i) {
        bool equal = true;
        for (std::size_t j = 0; j < i && equal; ++j) equal = (letters[j] == letters[m - i + j]);
        if (equal) return false;
    }
    return true;
}

struct GoodWord {
    RauzyPath path;                // the simple loop q
    Substitution zeta;             // zeta(q), composed left to right
    std::vector<std::string> gr;   // good return words of zeta(q)
    Int index;                     // lattice index of the population vectors (1 = generates Z^d)
};

// Search for a simple loop q at `start` whose composed substitution has a
// strictly positive matrix and good return words with population vectors
// generating Z^d.  Existence is known non-constructively; the search is
// budgeted and reports the best lattice index reached on failure.
inline GoodWord find_good_word(const Permutation& start, std::size_t budget = 500000) {
    if (!start.irreducible()) throw ReduciblePermutation(start.to_string());
    std::size_t d = start.size();
    long best_index = -1;

    struct Frame {
        Permutation perm;
        std::vector<RauzyStep> steps;
    };
    // iterative deepening: enumerate loops in increasing length
    std::size_t visited = 0;
    for (std::size_t max_len = 2; max_len <= 24; ++max_len) {
        std::vector<Frame> stack{{start, {}}};
        while (!stack.empty()) {
            Frame f = std::move(stack.back());
            stack.pop_back();
            if (++visited > budget)
                throw BudgetExceeded("good-word search budget exhausted", best_index);
            if (!f.steps.empty() && f.steps.size() <= max_len && f.perm == start &&
                f.steps.size() == max_len) {
                // candidate loop: check simplicity, positivity, lattice
                std::vector<Substitution> letters;
                letters.reserve(f.steps.size());
                for (const auto& s : f.steps) letters.push_back(Substitution::from_step(s));
                if (!is_simple_word(letters)) continue;
                Substitution zeta = compose_all(letters);
                if (!zeta.matrix().strictly_positive()) continue;
                auto gr = good_return_words(zeta);
                if (gr.empty()) continue;
                std::vector<std::vector<Int>> vecs;
                for (const auto& v : gr) vecs.push_back(population_vector(v, d));
                Int idx = lattice_index(vecs, d);
                if (idx != 0 && (best_index < 0 || idx < best_index))
                    best_index = static_cast<long>(idx.get_si());
                if (idx == 1) {
                    RauzyPath path{start, f.steps};
                    path.validate();
                    return GoodWord{std::move(path), std::move(zeta), std::move(gr), idx};
                }
                continue;
            }
            if (f.steps.size() >= max_len) continue;
            for (StepKind kind : {StepKind::Bottom, StepKind::Top}) {
                Frame g = f;
                RauzyStep s;
                s.kind = kind;
                s.from = g.perm;
                std::size_t at = g.perm.top_last(), ab = g.perm.bottom_last();
                s.winner = kind == StepKind::Top ? at : ab;
                s.loser = kind == StepKind::Top ? ab : at;
                g.perm = kind == StepKind::Top ? g.perm.after_top_move()
                                               : g.perm.after_bottom_move();
                s.to = g.perm;
                g.steps.push_back(std::move(s));
                stack.push_back(std::move(g));
            }
        }
    }
    throw BudgetExceeded("good-word search found no word with lattice index 1", best_index);
}

}  // namespace ietlab
