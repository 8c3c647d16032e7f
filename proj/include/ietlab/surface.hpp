#pragma once

#include <cstddef>
#include <vector>

#include "ietlab/matrix.hpp"
#include "ietlab/permutation.hpp"

namespace ietlab {

// Intersection form Omega_pi, (alpha,beta) entry +1 when beta is "after"
// alpha on top but "before" on the bottom, -1 in the mirrored case.
inline IntMatrix omega_matrix(const Permutation& p) {
    std::size_t d = p.size();
    IntMatrix m(d);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) {
            if (a == b) continue;
            bool bot_before = p.bottom_pos(b) < p.bottom_pos(a);
            bool top_after = p.top_pos(b) > p.top_pos(a);
            if (bot_before && top_after)
                m(a, b) = 1;
            else if (!bot_before && !top_after)
                m(a, b) = -1;
        }
    return m;
}

struct SurfaceData {
    IntMatrix omega;
    std::size_t genus = 0;  // rank(Omega) = 2g
    std::size_t kappa = 0;  // dim N(pi) = kappa - 1
    std::vector<std::vector<Int>> h_basis;  // integral basis of H(pi) = im(Omega)
    std::vector<std::vector<Int>> n_basis;  // integral basis of N(pi) = ker(Omega)
};

inline SurfaceData surface_data(const Permutation& p) {
    if (!p.irreducible()) throw ReduciblePermutation(p.to_string());
    SurfaceData s;
    s.omega = omega_matrix(p);
    std::size_t d = p.size();
    std::size_t r = rank(s.omega);
    if (r % 2 != 0) throw NumericError("antisymmetric form with odd rank");
    s.genus = r / 2;
    s.kappa = d + 1 - r;  // d = 2g + kappa - 1
    s.n_basis = kernel_basis(s.omega);
    // image basis: pivot columns of Omega (integer vectors, independent over Q)
    RatMatrix rm = to_rational(s.omega);
    std::vector<std::size_t> piv;
    row_reduce(rm, &piv);
    for (std::size_t c : piv) {
        std::vector<Int> col(d);
        for (std::size_t i = 0; i < d; ++i) col[i] = s.omega(i, c);
        s.h_basis.push_back(std::move(col));
    }
    return s;
}

// Type W: h = (1,...,1) lies outside H(pi).
inline bool is_type_w(const Permutation& p) {
    if (!p.irreducible()) throw ReduciblePermutation(p.to_string());
    std::vector<Int> ones(p.size(), Int(1));
    return !column_space_contains(omega_matrix(p), ones);
}

// Membership in the suspension cone T^+(pi): prefix sums of tau along the top
// order positive, along the bottom order negative (proper prefixes only).
inline bool in_t_plus(const Permutation& p, const std::vector<Rational>& tau) {
    std::size_t d = p.size();
    if (tau.size() != d) throw DimensionMismatch("tau must have one entry per label");
    Rational top_acc(0), bot_acc(0);
    for (std::size_t k = 0; k + 1 < d; ++k) {
        top_acc += tau[p.top_at(k)];
        bot_acc += tau[p.bottom_at(k)];
        if (!(top_acc > 0) || !(bot_acc < 0)) return false;
    }
    return true;
}

}  // namespace ietlab
