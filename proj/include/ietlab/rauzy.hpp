#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ietlab/iet.hpp"
#include "ietlab/matrix.hpp"
#include "ietlab/permutation.hpp"

namespace ietlab {

enum class StepKind : std::uint8_t { Top, Bottom };

inline char step_char(StepKind k) { return k == StepKind::Top ? 't' : 'b'; }

// One Rauzy move.  The elementary visitation matrix is I + E_{ab,at} for a
// top-type move and I + E_{at,ab} for a bottom-type move, so that the length
// identity lambda' B = lambda holds with row-vector action.
struct RauzyStep {
    StepKind kind;
    std::size_t winner, loser;  // label indices
    Permutation from, to;

    IntMatrix elementary() const {
        std::size_t d = from.size();
        std::size_t at = (kind == StepKind::Top) ? winner : loser;
        std::size_t ab = (kind == StepKind::Top) ? loser : winner;
        return kind == StepKind::Top ? IntMatrix::elementary(d, ab, at)
                                     : IntMatrix::elementary(d, at, ab);
    }
};

struct RauzyPath {
    Permutation start;
    std::vector<RauzyStep> steps;

    const Permutation& end() const { return steps.empty() ? start : steps.back().to; }
    std::size_t length() const { return steps.size(); }

    void validate() const {
        const Permutation* cur = &start;
        for (const auto& s : steps) {
            if (!(s.from == *cur)) throw PathMismatch("path steps do not chain");
            cur = &s.to;
        }
    }

    std::string kinds_string() const {
        std::string s;
        for (const auto& st : steps) s += step_char(st.kind);
        return s;
    }
};

// B_gamma := B_{gamma_k} ... B_{gamma_1}.
inline IntMatrix path_matrix(const RauzyPath& path) {
    path.validate();
    IntMatrix b = IntMatrix::identity(path.start.size());
    for (const auto& s : path.steps) b = s.elementary() * b;
    return b;
}

// Mutable induction state: permutation plus *unnormalized* lengths.  Rauzy
// induction on this representation only subtracts and compares, so rational
// mode stays exact with linear bit growth and ball mode spends no precision
// on renormalization.
struct InductionState {
    Permutation perm;
    std::vector<Scalar> lengths;

    static InductionState of(const IET& iet) { return {iet.perm(), iet.lengths()}; }

    Scalar total() const {
        Scalar t(0);
        for (const auto& l : lengths) t = t + l;
        return t;
    }

    IET to_iet(bool renormalize = true) const {
        IET::Options opt;
        opt.normalize = renormalize;
        return IET(perm, lengths, opt);
    }

    // One Rauzy move in place.
    RauzyStep step() {
        std::size_t at = perm.top_last(), ab = perm.bottom_last();
        if (at == ab) throw ReduciblePermutation("top and bottom share the last letter");
        int c = compare(lengths[at], lengths[ab]);
        if (c == 0) throw TieLengths("lambda_top == lambda_bottom: not renormalizable");
        RauzyStep s;
        s.from = perm;
        if (c > 0) {
            s.kind = StepKind::Top;
            s.winner = at;
            s.loser = ab;
            lengths[at] = lengths[at] - lengths[ab];
            perm = perm.after_top_move();
        } else {
            s.kind = StepKind::Bottom;
            s.winner = ab;
            s.loser = at;
            lengths[ab] = lengths[ab] - lengths[at];
            perm = perm.after_bottom_move();
        }
        s.to = perm;
        return s;
    }

    StepKind peek_kind() const {
        int c = compare(lengths[perm.top_last()], lengths[perm.bottom_last()]);
        if (c == 0) throw TieLengths("lambda_top == lambda_bottom: not renormalizable");
        return c > 0 ? StepKind::Top : StepKind::Bottom;
    }
};

inline std::pair<IET, RauzyStep> rauzy_step(const IET& iet) {
    InductionState st = InductionState::of(iet);
    RauzyStep s = st.step();
    return {st.to_iet(), s};
}

inline constexpr std::size_t kDefaultZorichBudget = 1'000'000;

// Apply Rauzy moves until the type flips; returns the accumulated block.
// Huge continued-fraction digits exist, hence the explicit budget.
inline std::vector<RauzyStep> zorich_block(InductionState& st,
                                           std::size_t budget = kDefaultZorichBudget) {
    std::vector<RauzyStep> block;
    StepKind first = st.peek_kind();
    while (st.peek_kind() == first) {
        if (block.size() >= budget)
            throw StepBudgetExceeded("Zorich block exceeded " + std::to_string(budget) +
                                     " elementary steps");
        block.push_back(st.step());
    }
    return block;
}

inline std::pair<IET, std::vector<RauzyStep>> zorich_step(
    const IET& iet, std::size_t budget = kDefaultZorichBudget) {
    InductionState st = InductionState::of(iet);
    auto block = zorich_block(st, budget);
    return {st.to_iet(), std::move(block)};
}

// ----- inverse-limit construction: an IET realizing a prescribed path -----

struct PathIET {
    IET iet;               // exact rational interior point of the cylinder
    double radius;         // certified coordinate spread of the cylinder
    RauzyPath path;        // combinatorial path actually walked
    IntMatrix cocycle;     // B_gamma over the full path
};

struct PathIETOptions {
    std::size_t positivity_window = 64;  // require a positive block per window
};

// Construct a lambda whose first `kinds.size()` Rauzy moves follow the given
// kinds: lambda is taken in the image of the standard simplex under the
// projectivized B_gamma^t, with the certified radius given by the simplex
// image's coordinate spread.  Columns of B_gamma^t are rows of B_gamma.
inline PathIET iet_from_path(const Permutation& start, const std::vector<StepKind>& kinds,
                             PathIETOptions opt = {}) {
    if (!start.irreducible()) throw ReduciblePermutation(start.to_string());
    std::size_t d = start.size();
    RauzyPath path{start, {}};
    Permutation cur = start;
    IntMatrix b = IntMatrix::identity(d);
    IntMatrix window_block = IntMatrix::identity(d);
    std::size_t in_window = 0;
    for (StepKind k : kinds) {
        RauzyStep s;
        s.kind = k;
        s.from = cur;
        std::size_t at = cur.top_last(), ab = cur.bottom_last();
        if (k == StepKind::Top) {
            s.winner = at;
            s.loser = ab;
            cur = cur.after_top_move();
        } else {
            s.winner = ab;
            s.loser = at;
            cur = cur.after_bottom_move();
        }
        s.to = cur;
        IntMatrix e = s.elementary();
        b = e * b;
        window_block = e * window_block;
        path.steps.push_back(std::move(s));
        if (++in_window == opt.positivity_window) {
            if (!window_block.strictly_positive())
                throw NonContractingPath("no positive block within a window of " +
                                         std::to_string(opt.positivity_window) + " steps");
            window_block = IntMatrix::identity(d);
            in_window = 0;
        }
    }
    if (!b.strictly_positive())
        throw NonContractingPath("path product never became strictly positive");

    // midpoint: columns of B^t summed = interior point of the cylinder
    std::vector<Rational> mid(d);
    Rational total(0);
    std::vector<Int> row_sum = b.row_sums();
    for (std::size_t a = 0; a < d; ++a) {
        Int col(0);
        for (std::size_t j = 0; j < d; ++j) col += b(j, a);
        mid[a] = Rational(col);
        total += mid[a];
    }
    for (auto& m : mid) m /= total;

    // coordinate spread of the normalized vertices (rows of B_gamma)
    double radius = 0;
    for (std::size_t a = 0; a < d; ++a) {
        Rational lo(1), hi(0);
        for (std::size_t j = 0; j < d; ++j) {
            Rational u = Rational(b(j, a)) / Rational(row_sum[j]);
            lo = std::min(lo, u);
            hi = std::max(hi, u);
        }
        radius = std::max(radius, to_double(hi - lo) / 2.0);
    }

    std::vector<Scalar> lens(mid.begin(), mid.end());
    return PathIET{make_iet(start, std::move(lens)), radius, std::move(path), std::move(b)};
}

// ----- first-return oracle (exact, no induction formulas) -----

struct ReturnPiece {
    Rational lo, hi;      // source interval inside [0, ell)
    Rational translation; // return map is x -> x + translation
    std::size_t time;     // return time
};

struct FirstReturnMap {
    std::vector<ReturnPiece> pieces;  // sorted by lo, tiling [0, ell)
    IET induced;                      // unnormalized IET on [0, ell)
};

inline FirstReturnMap first_return_map(const IET& iet, const Rational& ell,
                                       std::size_t budget = 200000) {
    if (!iet.rational_mode())
        throw ConfigError("first_return_map oracle requires exact rational mode");
    if (ell <= 0 || ell > 1) throw OutOfDomain("inducing interval must be (0, 1]");
    std::size_t d = iet.size();
    std::vector<Rational> breaks;  // interior discontinuities of T
    for (std::size_t p = 1; p < d; ++p) breaks.push_back(iet.top_left(p).rational());
    std::vector<Rational> trans(d);
    for (std::size_t a = 0; a < d; ++a) trans[a] = iet.translation(a).rational();
    auto label_at = [&](const Rational& x) {
        std::size_t lab = iet.perm().top_at(0);
        for (std::size_t p = 1; p < d; ++p)
            if (x >= iet.top_left(p).rational()) lab = iet.perm().top_at(p);
        return lab;
    };

    struct Seg {
        Rational lo, hi;  // source in [0, ell)
        Rational off;     // accumulated translation
        std::size_t time;
    };
    std::deque<Seg> work;
    work.push_back({Rational(0), ell, Rational(0), 0});
    std::vector<ReturnPiece> done;
    std::size_t ops = 0;
    while (!work.empty()) {
        if (++ops > budget) throw ReturnBudgetExceeded("first-return budget exhausted");
        Seg s = work.front();
        work.pop_front();
        Rational cur_lo = s.lo + s.off, cur_hi = s.hi + s.off;
        if (s.time >= 1 && cur_lo < ell) {
            if (cur_hi <= ell) {
                done.push_back({s.lo, s.hi, s.off, s.time});
                continue;
            }
            // straddles ell: the left part has returned
            Rational cut = ell - s.off;
            done.push_back({s.lo, cut, s.off, s.time});
            s.lo = cut;
            cur_lo = ell;
        }
        // apply T: split at interior discontinuities first
        Rational split = cur_hi;
        for (const auto& bpt : breaks)
            if (bpt > cur_lo && bpt < cur_hi && bpt < split) split = bpt;
        Rational w = trans[label_at(cur_lo)];
        if (split < cur_hi) {
            Rational cut = split - s.off;
            work.push_back({s.lo, cut, s.off + w, s.time + 1});
            work.push_back({cut, s.hi, s.off, s.time});
        } else {
            work.push_back({s.lo, s.hi, s.off + w, s.time + 1});
        }
    }
    std::sort(done.begin(), done.end(),
              [](const ReturnPiece& a, const ReturnPiece& b) { return a.lo < b.lo; });
    // merge adjacent pieces with equal translation (splits that healed)
    std::vector<ReturnPiece> merged;
    for (auto& p : done) {
        if (!merged.empty() && merged.back().hi == p.lo &&
            merged.back().translation == p.translation && merged.back().time == p.time)
            merged.back().hi = p.hi;
        else
            merged.push_back(p);
    }
    // assemble the induced IET: top order = source order, bottom order by image
    std::size_t n = merged.size();
    if (n < 2) throw NumericError("induced map degenerated to a single piece");
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i)
        labels[i] = "p" + std::to_string(i);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::vector<Rational> image_left(n);
    for (std::size_t i = 0; i < n; ++i) image_left[i] = merged[i].lo + merged[i].translation;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return image_left[a] < image_left[b]; });
    std::vector<std::size_t> top(n), bot(n);
    for (std::size_t i = 0; i < n; ++i) top[i] = i;
    for (std::size_t i = 0; i < n; ++i) bot[i] = order[i];
    std::vector<Scalar> lens(n);
    for (std::size_t i = 0; i < n; ++i) lens[i] = Scalar(Rational(merged[i].hi - merged[i].lo));
    IET::Options opt;
    opt.normalize = false;
    IET induced(Permutation(labels, top, bot), lens, opt);
    return FirstReturnMap{std::move(merged), std::move(induced)};
}

// Compare an induction state (unnormalized) against the first-return oracle
// *as functions*: over the union of both breakpoint sets, the translations
// must agree cell by cell.  (The oracle merges continuity points that the
// combinatorial presentation may keep split.)
inline bool matches_first_return(const InductionState& st, const FirstReturnMap& oracle) {
    IET composed = st.to_iet(false);
    Rational ell = composed.total().rational();
    if (oracle.pieces.empty()) return false;
    if (oracle.pieces.back().hi != ell) return false;
    std::vector<Rational> cuts;
    for (std::size_t p = 0; p < composed.size(); ++p)
        cuts.push_back(composed.top_left(p).rational());
    for (const auto& pc : oracle.pieces) cuts.push_back(pc.lo);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    std::size_t oi = 0;
    for (const auto& x : cuts) {
        while (oi + 1 < oracle.pieces.size() && oracle.pieces[oi].hi <= x) ++oi;
        if (x < oracle.pieces[oi].lo || x >= oracle.pieces[oi].hi) return false;
        std::size_t lab = composed.perm().top_at(0);
        for (std::size_t p = 1; p < composed.size(); ++p)
            if (x >= composed.top_left(p).rational()) lab = composed.perm().top_at(p);
        if (composed.translation(lab).rational() != oracle.pieces[oi].translation) return false;
    }
    return true;
}

}  // namespace ietlab
