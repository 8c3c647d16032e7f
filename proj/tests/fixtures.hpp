#pragma once

#include <random>
#include <vector>

#include "ietlab/iet.hpp"
#include "ietlab/rauzy.hpp"

namespace ietlab::fixtures {

// Golden-rotation 2-IET: lambda = (1 - 1/phi, 1/phi), i.e. rotation by
// 1/phi = (sqrt 5 - 1)/2, whose continued fraction is [0; 1, 1, 1, ...].
inline IET golden_ball(mpfr_prec_t prec = 256) {
    Ball s5 = Ball::sqrt_of_rational(Rational(5), prec);
    Ball inv_phi = (s5 - Ball::from_long(1, prec)) / Ball::from_long(2, prec);
    Permutation swap = Permutation::parse("A B / B A");
    std::vector<Scalar> len{Scalar(Ball::from_long(1, prec)) - Scalar(inv_phi), Scalar(inv_phi)};
    return make_iet(swap, std::move(len));
}

inline Scalar golden_theta_ball(mpfr_prec_t prec = 256) {
    Ball s5 = Ball::sqrt_of_rational(Rational(5), prec);
    return Scalar((s5 - Ball::from_long(1, prec)) / Ball::from_long(2, prec));
}

// Rational stand-in for the golden rotation: theta = F(k)/F(k+1).  Exact, and
// indistinguishable from 1/phi for the first ~k induction steps.
inline IET golden_rational(unsigned long k = 40) {
    Rational theta(fibonacci(k), fibonacci(k + 1));
    theta.canonicalize();
    return rotation_iet(Scalar(theta));
}

inline Permutation d3_reversal() { return Permutation::symmetric(3); }
inline Permutation d4_symmetric() { return Permutation::symmetric(4); }

// Seeded fair-coin step kinds.
inline std::vector<StepKind> coin_path(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    std::vector<StepKind> kinds(n);
    for (auto& k : kinds) k = (rng() & 1) ? StepKind::Top : StepKind::Bottom;
    return kinds;
}

// Seeded rational IET in a given class: interior point of a random cylinder.
inline IET random_rational_iet(const Permutation& perm, std::uint64_t seed, std::size_t depth) {
    for (std::size_t tries = 0;; ++tries) {
        try {
            PathIETOptions opt;
            opt.positivity_window = 1u << 30;  // only require final positivity
            return iet_from_path(perm, coin_path(seed + 1000 * tries, depth), opt).iet;
        } catch (const NonContractingPath&) {
            if (tries > 50) throw;
        }
    }
}

// Random rational length vector (positive, summing to 1) with denominator q.
inline std::vector<Rational> random_lengths(std::size_t d, std::uint64_t seed, long q = 9973) {
    std::mt19937_64 rng(seed);
    for (;;) {
        std::vector<long> cuts{0, q};
        for (std::size_t i = 0; i + 1 < d; ++i)
            cuts.push_back(static_cast<long>(rng() % static_cast<std::uint64_t>(q - 1)) + 1);
        std::sort(cuts.begin(), cuts.end());
        std::vector<Rational> len;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            long w = cuts[i + 1] - cuts[i];
            if (w <= 0) ok = false;
            len.push_back(make_rational(w, q));
        }
        if (ok) return len;
    }
}

}  // namespace ietlab::fixtures
