#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "ietlab/matrix.hpp"
#include "ietlab/substitution.hpp"

namespace ietlab {

// Spectral parameter omega with an exact path for rational values: phases of
// huge integer tiling lengths reduce modulo the denominator with no rounding,
// which is what keeps the cocycle products meaningful at depth.
class Twist {
  public:
    static Twist exact(const Rational& omega) {
        Twist t;
        t.exact_ = true;
        t.om_ = omega;
        t.om_d_ = to_double(omega);
        return t;
    }
    static Twist approx(double omega) {
        Twist t;
        t.exact_ = false;
        t.om_d_ = omega;
        return t;
    }

    bool is_exact() const { return exact_; }
    double value() const { return om_d_; }

    // exp(-2 pi i omega t) for an integer tiling length t
    std::complex<double> phase(const Int& t) const {
        double frac;
        if (exact_) {
            Int r = ((om_.get_num() * t) % om_.get_den() + om_.get_den()) % om_.get_den();
            frac = to_double(Rational(r, om_.get_den()));
        } else {
            frac = std::fmod(om_d_ * mpz_get_d(t.get_mpz_t()), 1.0);
        }
        double angle = -2 * std::numbers::pi * frac;
        return {std::cos(angle), std::sin(angle)};
    }

    // || omega * t ||_{R/Z}, distance to the nearest integer
    double torus_dist(const Int& t) const {
        if (exact_) {
            Int r = ((om_.get_num() * t) % om_.get_den() + om_.get_den()) % om_.get_den();
            Rational f(r, om_.get_den());
            Rational alt = 1 - f;
            return to_double(f < alt ? f : alt);
        }
        double f = std::fmod(std::abs(om_d_ * mpz_get_d(t.get_mpz_t())), 1.0);
        return std::min(f, 1.0 - f);
    }

  private:
    bool exact_ = false;
    Rational om_;
    double om_d_ = 0.0;
};

// Small dense complex matrix.
struct CxMatrix {
    std::size_t d = 0;
    std::vector<std::complex<double>> a;

    CxMatrix() = default;
    explicit CxMatrix(std::size_t dim) : d(dim), a(dim * dim) {}
    static CxMatrix identity(std::size_t dim) {
        CxMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }
    std::complex<double>& operator()(std::size_t i, std::size_t j) { return a[i * d + j]; }
    const std::complex<double>& operator()(std::size_t i, std::size_t j) const {
        return a[i * d + j];
    }
    CxMatrix operator*(const CxMatrix& o) const {
        CxMatrix r(d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t k = 0; k < d; ++k) {
                auto v = (*this)(i, k);
                if (v == std::complex<double>(0, 0)) continue;
                for (std::size_t j = 0; j < d; ++j) r(i, j) += v * o(k, j);
            }
        return r;
    }
    double max_abs_diff(const CxMatrix& o) const {
        double m = 0;
        for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - o.a[i]));
        return m;
    }
};

inline std::vector<Int> to_int_vector(const std::vector<long>& v) {
    return std::vector<Int>(v.begin(), v.end());
}

// Phi_alpha^s(v, omega) = sum over positions j with v_j = alpha of
// exp(-2 pi i omega |v_1 ... v_{j-1}|_s), streamed over the word.
inline std::complex<double> phi(const std::string& word, char alpha, const std::vector<Int>& s,
                                const Twist& omega) {
    Int prefix(0);
    std::complex<double> sum(0, 0);
    for (char c : word) {
        if (c == alpha) sum += omega.phase(prefix);
        prefix += s[letter_index(c)];
    }
    return sum;
}

// M^s_{xi,zeta}(omega)(beta, gamma) = Phi^{S_xi^t s}_gamma(zeta(beta), omega).
// xi enters only through its substitution matrix.
inline CxMatrix twisted_matrix(const IntMatrix& s_xi, const Substitution& zeta,
                               const std::vector<Int>& s, const Twist& omega) {
    std::size_t d = zeta.size();
    // s' = S_xi^t s
    std::vector<Int> sp(d, Int(0));
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < d; ++i) sp[j] += s_xi(i, j) * s[i];
    CxMatrix m(d);
    for (std::size_t beta = 0; beta < d; ++beta) {
        Int prefix(0);
        for (char c : zeta.image(beta)) {
            m(beta, letter_index(c)) += omega.phase(prefix);
            prefix += sp[letter_index(c)];
        }
    }
    return m;
}

// Pi_n = M_n ... M_1 with M_k = M^s_{zeta^{[k-1]}, zeta_k}(omega).
inline CxMatrix pi_n(const std::vector<Substitution>& seq, const std::vector<Int>& s,
                     const Twist& omega, std::size_t n) {
    if (n > seq.size()) throw DimensionMismatch("pi_n: n exceeds the substitution sequence");
    std::size_t d = seq.empty() ? 0 : seq[0].size();
    CxMatrix pi = CxMatrix::identity(d);
    IntMatrix s_prefix = IntMatrix::identity(d);  // S^{[k-1]}
    for (std::size_t k = 0; k < n; ++k) {
        CxMatrix mk = twisted_matrix(s_prefix, seq[k], s, omega);
        pi = mk * pi;
        s_prefix = s_prefix * seq[k].matrix();
    }
    return pi;
}

// col(A) = max_{i,j,k} A_ij / A_kj; denominators must be positive.
inline Rational col(const IntMatrix& m) {
    std::size_t d = m.dim();
    Rational best(0);
    for (std::size_t j = 0; j < d; ++j) {
        Int mx = m(0, j), mn = m(0, j);
        for (std::size_t i = 1; i < d; ++i) {
            mx = std::max(mx, m(i, j));
            mn = std::min(mn, m(i, j));
        }
        if (mn <= 0) throw NumericError("col(A): column with a non-positive entry");
        Rational r{mx, mn};
        r.canonicalize();
        best = std::max(best, r);
    }
    return best;
}

// c1 = (2d max(Q) col(Q^t))^{-1} for a strictly positive Q.
inline Rational c1_constant(const IntMatrix& q) {
    if (!q.strictly_positive()) throw NumericError("c1 requires a strictly positive matrix");
    Rational c = Rational(2 * static_cast<long>(q.dim())) * Rational(q.max_entry()) *
                 col(q.transpose());
    return 1 / c;
}

// Measured norm-equivalence constant between max_v ||<l(v), x>||_{R/Z} over
// the good return words and ||x||_{R^d/Z^d} (sup metric), on a grid.
inline double gr_norm_constant(const std::vector<std::string>& gr, std::size_t d,
                               std::size_t resolution = 8) {
    std::vector<std::vector<Int>> pops;
    for (const auto& v : gr) pops.push_back(population_vector(v, d));
    double c_needed = 1.0;
    std::vector<std::size_t> idx(d, 0);
    auto torus = [](const Rational& q) {
        Rational f = rational_mod1(q);
        Rational a = f < 1 - f ? f : 1 - f;
        return to_double(a);
    };
    for (;;) {
        double xnorm = 0;
        Rational step(1, static_cast<long>(resolution));
        bool all_zero = true;
        std::vector<Rational> x(d);
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = Rational(static_cast<long>(idx[i])) * step;
            double di = torus(x[i]);
            xnorm = std::max(xnorm, di);
            if (idx[i] != 0) all_zero = false;
        }
        if (!all_zero) {
            double pseudo = 0;
            for (const auto& l : pops) {
                Rational ip(0);
                for (std::size_t i = 0; i < d; ++i) ip += Rational(l[i]) * x[i];
                pseudo = std::max(pseudo, torus(ip));
            }
            if (pseudo > 0 && xnorm > 0)
                c_needed = std::max({c_needed, xnorm / pseudo, pseudo / xnorm});
        }
        std::size_t i = 0;
        while (i < d && ++idx[i] == resolution) idx[i++] = 0;
        if (i == d) break;
    }
    return c_needed;
}

inline Rational c1_prime(const Rational& c1, double measured_c_zeta) {
    return c1 / Rational(measured_c_zeta * measured_c_zeta);
}

struct MainBound {
    double bound = 0;                // ||S^{[N]}||_1 * product of contraction factors
    std::vector<double> factors;     // per-level 1 - c1 max_v ||omega |zeta^{[k]}(v)|_s||^2
    double log_bound = 0;            // log of the bound, safe for large N
    Rational c1;
};

// Proposition-style product bound for |Phi_alpha(zeta^{[N]}(beta), omega)|.
// The sequence is zeta_j = zeta xi_j zeta (checked structurally); GR is the
// set of good return words of zeta.
inline MainBound mainbound(const Substitution& zeta, const std::vector<Substitution>& xis,
                           const std::vector<Int>& s, const Twist& omega,
                           const std::vector<std::string>& gr) {
    if (gr.empty()) throw StructureViolation("mainbound needs a nonempty good-return set");
    IntMatrix q = zeta.matrix();
    if (!q.strictly_positive())
        throw StructureViolation("mainbound needs a strictly positive S_zeta");
    MainBound out;
    out.c1 = c1_constant(q);
    double c1d = to_double(out.c1);
    std::size_t d = zeta.size();
    std::vector<std::vector<Int>> pops;
    for (const auto& v : gr) pops.push_back(population_vector(v, d));

    IntMatrix s_prefix = IntMatrix::identity(d);  // S^{[k]} over the composed sequence
    double log_prod = 0;
    std::size_t n_levels = xis.size();
    for (std::size_t k = 0; k < n_levels; ++k) {
        // max over GR of || omega |zeta^{[k]}(v)|_s ||^2
        double worst = 0;
        for (const auto& l : pops) {
            // |zeta^{[k]}(v)|_s = <l(v), (S^{[k]})^t s>
            Int t(0);
            for (std::size_t i = 0; i < d; ++i) {
                Int coord(0);
                for (std::size_t r = 0; r < d; ++r) coord += s_prefix(r, i) * s[r];
                t += l[i] * coord;
            }
            double dist = omega.torus_dist(t);
            worst = std::max(worst, dist * dist);
        }
        double factor = 1 - c1d * worst;
        out.factors.push_back(factor);
        log_prod += std::log(factor);
        // advance S^{[k]} by zeta_k = zeta xi_k zeta
        Substitution zk = zeta.compose(xis[k]).compose(zeta);
        s_prefix = s_prefix * zk.matrix();
    }
    double log_norm = std::log(mpz_get_d(s_prefix.one_norm().get_mpz_t()));
    out.log_bound = log_norm + log_prod;
    out.bound = std::exp(out.log_bound);
    return out;
}

}  // namespace ietlab
