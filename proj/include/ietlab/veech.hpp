#pragma once

#include <vector>

#include "ietlab/matrix.hpp"
#include "ietlab/rauzy.hpp"

namespace ietlab {

// Cumulative path products A_i = B_{gamma_i} ... B_{gamma_1} for i = 1..n.
inline std::vector<IntMatrix> cumulative_path_matrices(const RauzyPath& path) {
    path.validate();
    std::vector<IntMatrix> out;
    out.reserve(path.steps.size());
    IntMatrix b = IntMatrix::identity(path.start.size());
    for (const auto& s : path.steps) {
        b = s.elementary() * b;
        out.push_back(b);
    }
    return out;
}

// ||t A_i h||_{R^d/Z^d} in the sup metric with h = (1,...,1): exact
// big-integer fractional parts of t * rowsum.
inline Rational torus_dist_sup(const std::vector<Int>& v, const Rational& t) {
    Rational worst(0);
    for (const Int& x : v) {
        Rational d = dist_to_integers(t * Rational(x));
        worst = std::max(worst, d);
    }
    return worst;
}

struct VeechFrequency {
    Rational fraction;        // #{i <= n : ||A_i t h|| > eps} / n
    std::size_t exceed = 0;   // numerator
    std::size_t total = 0;    // n
};

// Empirical Veech frequency along a cocycle trajectory, exact for rational t
// and eps.
inline VeechFrequency veech_frequency(const std::vector<IntMatrix>& a_i, const Rational& t,
                                      const Rational& eps) {
    VeechFrequency out;
    out.total = a_i.size();
    for (const auto& a : a_i) {
        if (torus_dist_sup(a.row_sums(), t) > eps) ++out.exceed;
    }
    out.fraction = out.total == 0
                       ? Rational(0)
                       : Rational(static_cast<long>(out.exceed), static_cast<long>(out.total));
    out.fraction.canonicalize();
    return out;
}

}  // namespace ietlab
