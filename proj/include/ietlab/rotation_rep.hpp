#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "ietlab/correlate.hpp"
#include "ietlab/diagram.hpp"
#include "ietlab/grid.hpp"
#include "ietlab/iet.hpp"
#include "ietlab/rauzy.hpp"
#include "ietlab/substitution.hpp"

namespace ietlab {

struct RoofPiece {
    Rational lo, hi;  // subinterval of the base I0 = [0, a)
    Int height;       // integer roof value
};

// A rotation-class IET presented as the time-discretized special flow over
// the rotation R(x) = x + a theta (mod a) on I0 = [0, a) with an
// integer-valued roof.
struct RotationRepresentation {
    IET ambient;                  // the represented IET on [0,1)
    Rational base_len;            // a
    Rational w;                   // a * theta, the base translation
    Rational theta;               // rotation number of the base
    std::vector<RoofPiece> roof;  // sorted, tiling [0, a)
    Int var;                      // circular total variation of the roof
    RauzyPath inducing_path;      // first path reaching a rotation vertex
    bool degenerate_full_base = false;  // a == 1 (roof == 1): flagged boundary case

    Int roof_at(const Rational& x) const {
        for (const auto& rp : roof)
            if (x >= rp.lo && x < rp.hi) return rp.height;
        throw OutOfDomain("point outside the base interval");
    }
    Rational rotate(const Rational& x) const {
        Rational y = x + w;
        if (y >= base_len) y -= base_len;
        return y;
    }
    // Kac: integral of the roof over I0 equals 1 (total ambient measure)
    Rational roof_integral() const {
        Rational s(0);
        for (const auto& rp : roof) s += (rp.hi - rp.lo) * Rational(rp.height);
        return s;
    }
};

inline Int circular_variation(const std::vector<RoofPiece>& roof) {
    Int var(0);
    std::size_t m = roof.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Int& h0 = roof[i].height;
        const Int& h1 = roof[(i + 1) % m].height;
        var += abs(h1 - h0);
    }
    return var;
}

// Run Rauzy induction until the permutation becomes a rotation; the induced
// map is then the base rotation and the cocycle row sums give the roof.
// The first rotation vertex reached is taken; the path is recorded.
inline RotationRepresentation rotation_representation(const IET& iet,
                                                      std::size_t budget = 100000) {
    if (!iet.rational_mode()) throw ConfigError("rotation_representation needs rational mode");
    if (!is_rotation_class(iet.perm()))
        throw NotRotationClass("permutation's Rauzy class contains no rotation: " +
                               iet.perm().to_string());
    InductionState st = InductionState::of(iet);
    RauzyPath path{iet.perm(), {}};
    std::size_t steps = 0;
    while (!st.perm.is_rotation()) {
        if (++steps > budget) throw StepBudgetExceeded("no rotation vertex within the budget");
        path.steps.push_back(st.step());
    }
    RotationRepresentation rep{iet,           Rational(0), Rational(0), Rational(0), {},
                               Int(0),        path,        false};
    IET induced = st.to_iet(false);
    rep.base_len = induced.total().rational();
    std::size_t first = induced.perm().top_at(0);
    rep.w = induced.translation(first).rational();
    rep.theta = rep.w / rep.base_len;
    std::vector<Int> times = path_matrix(path).row_sums();
    std::size_t d = induced.size();
    for (std::size_t p = 0; p < d; ++p) {
        std::size_t lab = induced.perm().top_at(p);
        Rational lo = induced.top_left(p).rational();
        Rational hi = (p + 1 < d) ? induced.top_left(p + 1).rational() : rep.base_len;
        RoofPiece rp{lo, hi, times[lab]};
        if (!rep.roof.empty() && rep.roof.back().height == rp.height)
            rep.roof.back().hi = rp.hi;  // merge equal heights
        else
            rep.roof.push_back(rp);
    }
    rep.var = circular_variation(rep.roof);
    rep.degenerate_full_base = path.steps.empty();
    if (rep.roof_integral() != 1)
        throw NumericError("Kac identity violated: roof integral != total measure");
    return rep;
}

// Inverse induction: the ambient IET whose renormalization follows gamma and
// arrives at the prescribed induced lengths.  The length cocycle identity
// lambda^{(gamma)} B_gamma = lambda makes this exact: any strictly positive
// choice of induced lengths lies in the interior of gamma's cylinder.
inline IET ambient_from_induced(const RauzyPath& gamma,
                                const std::vector<Rational>& induced_lengths) {
    gamma.validate();
    std::size_t d = gamma.start.size();
    if (induced_lengths.size() != d) throw DimensionMismatch("one induced length per label");
    for (const auto& l : induced_lengths)
        if (!(l > 0)) throw NonPositiveLength("induced lengths must be positive");
    IntMatrix b = path_matrix(gamma);
    std::vector<Rational> lambda(d, Rational(0));
    for (std::size_t beta = 0; beta < d; ++beta)
        for (std::size_t alpha = 0; alpha < d; ++alpha)
            lambda[beta] += induced_lengths[alpha] * Rational(b(alpha, beta));
    return make_iet(gamma.start, lambda);
}

// Shortest move path from `start` to the first rotation permutation in its
// class (labeled moves, so the path composes with the cocycle directly).
inline RauzyPath path_to_rotation(const Permutation& start, std::size_t budget = 100000) {
    if (!is_rotation_class(start))
        throw NotRotationClass("no rotation in the Rauzy class of " + start.to_string());
    struct Node {
        Permutation perm;
        std::size_t parent;
        StepKind kind;
    };
    std::vector<Node> nodes{{start, SIZE_MAX, StepKind::Top}};
    std::set<std::vector<std::size_t>> seen;
    auto key_of = [](const Permutation& p) {
        auto k = p.shape();
        for (std::size_t i = 0; i < p.size(); ++i) k.push_back(p.top_at(i));
        return k;
    };
    seen.insert(key_of(start));
    for (std::size_t head = 0; head < nodes.size() && head < budget; ++head) {
        if (nodes[head].perm.is_rotation()) {
            std::vector<RauzyStep> steps;
            std::size_t idx = head;
            while (nodes[idx].parent != SIZE_MAX) {
                const Node& n = nodes[idx];
                RauzyStep s;
                s.kind = n.kind;
                s.from = nodes[n.parent].perm;
                s.to = n.perm;
                std::size_t at = s.from.top_last(), ab = s.from.bottom_last();
                s.winner = s.kind == StepKind::Top ? at : ab;
                s.loser = s.kind == StepKind::Top ? ab : at;
                steps.push_back(s);
                idx = n.parent;
            }
            std::reverse(steps.begin(), steps.end());
            RauzyPath path{start, std::move(steps)};
            path.validate();
            return path;
        }
        for (StepKind kind : {StepKind::Top, StepKind::Bottom}) {
            Permutation next = kind == StepKind::Top ? nodes[head].perm.after_top_move()
                                                     : nodes[head].perm.after_bottom_move();
            if (seen.insert(key_of(next)).second) nodes.push_back({std::move(next), head, kind});
        }
    }
    throw StepBudgetExceeded("no rotation vertex found within the search budget");
}

// Round trip: for base points, climbing the tower one step at a time under
// the ambient IET reproduces the special flow exactly: intermediate points
// leave the base, and the r(x)-th iterate equals R(x).
inline bool verify_rotation_representation(const RotationRepresentation& rep,
                                           std::size_t n_samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t k = 0; k < n_samples; ++k) {
        Rational x = rep.base_len * Rational(static_cast<long>(rng() % 999983ull), 999983L);
        x.canonicalize();
        Int r = rep.roof_at(x);
        Scalar cur{x};
        for (Int j(1); j <= r; j += 1) {
            cur = rep.ambient.apply(cur);
            bool in_base = cur.rational() < rep.base_len;
            if (j < r && in_base) return false;
            if (j == r && !in_base) return false;
        }
        if (cur.rational() != rep.rotate(x)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Denjoy-Koksma deviation check
// ---------------------------------------------------------------------------

struct DKRow {
    std::size_t k;
    double deviation;  // max over sampled x of |sum_{i<k} r(R^i x) - k/a|
    double envelope;   // Var(r) log k (log log k)^{1+eps}
    double ratio;      // deviation / envelope
};

struct DKReport {
    std::vector<DKRow> rows;
    double c_eps = 0;  // smallest constant making the bound hold on the grid
    Int var;
};

inline DKReport denjoy_koksma_check(const RotationRepresentation& rep,
                                    const std::vector<std::size_t>& k_grid, double eps,
                                    std::size_t n_x_samples = 16, std::uint64_t seed = 1) {
    DKReport report;
    report.var = rep.var;
    if (k_grid.empty()) return report;
    std::size_t k_max = *std::max_element(k_grid.begin(), k_grid.end());

    std::vector<Rational> xs;
    for (const auto& rp : rep.roof) xs.push_back(rp.lo);  // boundary points stress the bound
    std::mt19937_64 rng(seed);
    while (xs.size() < n_x_samples + rep.roof.size())
        xs.push_back(rep.base_len * Rational(static_cast<long>(rng() % 999979ull), 999979L));

    Rational mean = Rational(1) / rep.base_len;  // Kac: int_{I0} r = 1/a (normalized)
    std::vector<double> worst(k_max + 1, 0.0);
    for (auto& x0 : xs) {
        x0.canonicalize();
        Rational x = x0;
        Rational sum(0);
        for (std::size_t i = 1; i <= k_max; ++i) {
            sum += Rational(rep.roof_at(x));
            x = rep.rotate(x);
            Rational dev = sum - Rational(static_cast<long>(i)) * mean;
            double devd = std::abs(to_double(dev));
            worst[i] = std::max(worst[i], devd);
        }
    }
    for (std::size_t k : k_grid) {
        if (k < 3) continue;  // log log k must be positive
        double lk = std::log(static_cast<double>(k));
        double env = mpz_get_d(rep.var.get_mpz_t()) * lk * std::pow(std::log(lk), 1 + eps);
        DKRow row{k, worst[k], env, env > 0 ? worst[k] / env : 0.0};
        report.c_eps = std::max(report.c_eps, row.ratio);
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace ietlab
