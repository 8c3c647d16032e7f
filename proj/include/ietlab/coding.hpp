#pragma once

#include <string>
#include <vector>

#include "ietlab/iet.hpp"
#include "ietlab/rauzy.hpp"
#include "ietlab/substitution.hpp"

namespace ietlab {

// Orbit codings through the renormalization towers.  Level j corresponds to
// j elementary Rauzy steps: the level-j letters are the subintervals of the
// induced IET on I^(j), and zeta_{j+1} (the step substitution) expands a
// level-(j+1) letter into its level-j itinerary.
struct CodingLevels {
    std::vector<std::string> words;       // words[j]: level-j coding of the orbit
    std::vector<Substitution> step_subs;  // step_subs[j] = zeta_{j+1}
    std::vector<Rational> totals;         // |I^(j)|
};

inline CodingLevels coding_levels(const IET& iet, const Scalar& x, std::size_t n_steps,
                                  std::size_t depth) {
    if (!iet.rational_mode() || !x.is_rational())
        throw ConfigError("coding requires exact rational mode");
    CodingLevels out;
    std::vector<InductionState> states;
    InductionState st = InductionState::of(iet);
    states.push_back(st);
    out.totals.push_back(st.total().rational());
    for (std::size_t j = 0; j < depth; ++j) {
        out.step_subs.push_back(Substitution::from_step(st.step()));
        states.push_back(st);
        out.totals.push_back(st.total().rational());
    }
    // orbit once, classify at every level
    std::vector<Rational> pts;
    pts.reserve(n_steps);
    Rational cur = x.rational();
    std::vector<std::vector<Rational>> lefts(depth + 1);  // top-left endpoints per level
    for (std::size_t j = 0; j <= depth; ++j) {
        IET lvl = states[j].to_iet(false);
        for (std::size_t p = 0; p < lvl.size(); ++p) lefts[j].push_back(lvl.top_left(p).rational());
    }
    out.words.assign(depth + 1, std::string());
    IET base = states[0].to_iet(false);
    for (std::size_t i = 0; i < n_steps; ++i) {
        for (std::size_t j = 0; j <= depth; ++j) {
            if (cur >= out.totals[j]) continue;
            std::size_t pos = 0;
            for (std::size_t p = 1; p < lefts[j].size(); ++p)
                if (cur >= lefts[j][p]) pos = p;
            out.words[j] += letter_char(states[j].perm.top_at(pos));
        }
        cur = base.apply(Scalar(cur)).rational();
    }
    return out;
}

// The itinerary of x through the level-`level` towers.
inline std::string symbolic_coding(const IET& iet, const Scalar& x, std::size_t n_steps,
                                   std::size_t level) {
    return coding_levels(iet, x, n_steps, level).words[level];
}

struct PrefixSuffixReport {
    bool chain_ok = false;     // every level parses as suffix . zeta(next) . prefix
    bool sandwich_ok = false;  // min |zeta^{[l+1,n]}| <= N <= 2 max |zeta^{[l+1,n+1]}|
    std::size_t n_depth = 0;   // deepest level with a nonempty coding
    Int min_len_n, max_len_np1;
};

namespace detail {

// word must read as s . z(next') . p where s is a proper suffix of some
// image (empty when the orbit starts on a level-(j+1) base), and either
// next' = next with p empty (window ends at a tower top) or next' drops the
// final letter c and p is a nonempty proper prefix of z(c) (window cuts
// mid-tower).
inline bool parse_level(const std::string& word, const Substitution& z, const std::string& next) {
    std::vector<std::string> s_candidates{""};
    for (std::size_t a = 0; a < z.size(); ++a) {
        const std::string& im = z.image(a);
        for (std::size_t k = 1; k < im.size(); ++k) s_candidates.push_back(im.substr(k));
    }
    for (bool dropped : {false, true}) {
        if (dropped && next.empty()) continue;
        std::string core = dropped ? next.substr(0, next.size() - 1) : next;
        std::string mid = z.apply(core);
        const std::string& last_image = z.image(letter_index(next.back()));
        for (const auto& s : s_candidates) {
            if (s.size() + mid.size() > word.size()) continue;
            if (word.compare(0, s.size(), s) != 0) continue;
            if (word.compare(s.size(), mid.size(), mid) != 0) continue;
            std::string p = word.substr(s.size() + mid.size());
            bool p_ok = dropped ? (!p.empty() && p.size() < last_image.size() &&
                                   last_image.compare(0, p.size(), p) == 0)
                                : p.empty();
            if (p_ok) return true;
        }
    }
    return false;
}

}  // namespace detail

// Check the tower decomposition of the level-`level` coding word against the
// step substitutions, and the length sandwich at the terminal depth.
inline PrefixSuffixReport validate_prefix_suffix(const CodingLevels& cl, std::size_t level) {
    PrefixSuffixReport rep;
    std::size_t depth = cl.words.size() - 1;
    std::size_t n = level;
    while (n < depth && !cl.words[n + 1].empty()) ++n;
    rep.n_depth = n;
    rep.chain_ok = true;
    for (std::size_t j = level; j < n; ++j)
        rep.chain_ok =
            rep.chain_ok && detail::parse_level(cl.words[j], cl.step_subs[j], cl.words[j + 1]);
    // sandwich needs zeta^{[level+1, n]} and one more level
    if (n + 1 > depth) return rep;  // not enough depth collected; sandwich not evaluated
    std::size_t d = cl.step_subs[0].size();
    IntMatrix prod = IntMatrix::identity(d);
    for (std::size_t j = level; j < n; ++j) prod = prod * cl.step_subs[j].matrix();
    auto col_lengths = [&](const IntMatrix& m) {
        std::vector<Int> c(d, Int(0));
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t i = 0; i < d; ++i) c[j] += m(i, j);
        return c;
    };
    std::vector<Int> len_n = col_lengths(prod);
    IntMatrix prod1 = prod * cl.step_subs[n].matrix();
    std::vector<Int> len_np1 = col_lengths(prod1);
    rep.min_len_n = len_n[0];
    for (const auto& v : len_n) rep.min_len_n = std::min(rep.min_len_n, v);
    rep.max_len_np1 = len_np1[0];
    for (const auto& v : len_np1) rep.max_len_np1 = std::max(rep.max_len_np1, v);
    Int n_letters(static_cast<long>(cl.words[level].size()));
    rep.sandwich_ok = rep.min_len_n <= n_letters && n_letters <= 2 * rep.max_len_np1;
    return rep;
}

}  // namespace ietlab
