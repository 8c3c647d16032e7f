#pragma once

#include <algorithm>
#include <cstdint>
#include <type_traits>
#include <vector>

#include "ietlab/iet.hpp"

namespace ietlab {

inline Int lcm_int(const Int& a, const Int& b) {
    Int g = gcd(a, b);
    return a / g * b;
}

// Exact piecewise-translation tracker on the grid (1/q) Z.  The map is given
// by cells (right endpoints) and per-cell offsets; step() applies it to every
// tracked piece, splitting at cell boundaries.  Pieces are disjoint, so the
// piece count grows by at most (#cells - 1) per step.
template <class Coord>
struct PiecewiseTracker {
    std::vector<Coord> cell_ends;  // ascending, last = q
    std::vector<Coord> offsets;    // per cell

    struct P {
        Coord lo, hi, off;  // tracked map: x -> x + off on [lo, hi)
    };
    std::vector<P> pieces;

    Coord total_len() const {
        Coord t(0);
        for (const auto& p : pieces) t += p.hi - p.lo;
        return t;
    }

    void step() {
        std::vector<P> next;
        next.reserve(pieces.size() + cell_ends.size());
        for (const auto& p : pieces) {
            Coord lo = p.lo;
            while (lo < p.hi) {
                Coord y_lo = lo + p.off;
                std::size_t cell = static_cast<std::size_t>(
                    std::upper_bound(cell_ends.begin(), cell_ends.end(), y_lo) -
                    cell_ends.begin());
                Coord limit = cell_ends[cell] - p.off;
                Coord hi = std::min(p.hi, limit);
                next.push_back({lo, hi, p.off + offsets[cell]});
                lo = hi;
            }
        }
        pieces = std::move(next);
    }
};

template <class Coord>
Coord rational_to_coord(const Rational& r, const Int& q) {
    Rational scaled = r * Rational(q);
    if (scaled.get_den() != 1) throw NumericError("coordinate off the common grid");
    if constexpr (std::is_same_v<Coord, std::int64_t>) {
        return static_cast<std::int64_t>(Int(scaled.get_num()).get_si());
    } else {
        return Int(scaled.get_num());
    }
}

template <class Coord>
double coord_to_double(const Coord& c, double qd) {
    if constexpr (std::is_same_v<Coord, std::int64_t>)
        return static_cast<double>(c) / qd;
    else
        return mpz_get_d(c.get_mpz_t()) / qd;
}

// forward map cells of T (top partition with +w offsets)
template <class Coord>
PiecewiseTracker<Coord> forward_tracker(const IET& iet, const Int& q) {
    PiecewiseTracker<Coord> t;
    std::size_t d = iet.size();
    for (std::size_t p = 0; p < d; ++p) {
        std::size_t lab = iet.perm().top_at(p);
        Rational right = (p + 1 < d) ? iet.top_left(p + 1).rational() : Rational(1);
        t.cell_ends.push_back(rational_to_coord<Coord>(right, q));
        t.offsets.push_back(rational_to_coord<Coord>(iet.translation(lab).rational(), q));
    }
    return t;
}

// inverse map cells of T (image partition with -w offsets)
template <class Coord>
PiecewiseTracker<Coord> inverse_tracker(const IET& iet, const Int& q) {
    PiecewiseTracker<Coord> t;
    std::size_t d = iet.size();
    for (std::size_t p = 0; p < d; ++p) {
        std::size_t lab = iet.perm().bottom_at(p);
        Rational left = iet.top_left(iet.perm().top_pos(lab)).rational() +
                        iet.translation(lab).rational();
        Rational right = left + iet.length(lab).rational();
        t.cell_ends.push_back(rational_to_coord<Coord>(right, q));
        t.offsets.push_back(rational_to_coord<Coord>(-iet.translation(lab).rational(), q));
    }
    return t;
}

inline Int iet_denominator(const IET& iet) {
    Int q(1);
    for (std::size_t p = 0; p < iet.size(); ++p)
        q = lcm_int(q, Int(iet.top_left(p).rational().get_den()));
    for (std::size_t a = 0; a < iet.size(); ++a)
        q = lcm_int(q, Int(iet.translation(a).rational().get_den()));
    return q;
}

}  // namespace ietlab
