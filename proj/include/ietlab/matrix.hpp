#pragma once

#include <cstddef>
#include <vector>

#include "ietlab/errors.hpp"
#include "ietlab/rational.hpp"

namespace ietlab {

// Dense square matrix of big integers (d is small: the number of exchanged
// intervals).  Rauzy path products live here; entries grow exponentially in
// the path length, which is why the type is mpz-backed.
class IntMatrix {
  public:
    IntMatrix() = default;
    explicit IntMatrix(std::size_t d) : d_(d), a_(d * d, Int(0)) {}

    static IntMatrix identity(std::size_t d) {
        IntMatrix m(d);
        for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
        return m;
    }
    // I + E_{rc}: the elementary Rauzy visitation matrix.
    static IntMatrix elementary(std::size_t d, std::size_t r, std::size_t c) {
        IntMatrix m = identity(d);
        m(r, c) += 1;
        return m;
    }

    std::size_t dim() const { return d_; }
    Int& operator()(std::size_t i, std::size_t j) { return a_[i * d_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * d_ + j]; }

    bool operator==(const IntMatrix& o) const { return d_ == o.d_ && a_ == o.a_; }

    IntMatrix operator*(const IntMatrix& o) const {
        if (d_ != o.d_) throw DimensionMismatch("matrix product dimension mismatch");
        IntMatrix r(d_);
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t k = 0; k < d_; ++k) {
                const Int& aik = (*this)(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < d_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }

    IntMatrix transpose() const {
        IntMatrix r(d_);
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    std::vector<Int> mul_vec(const std::vector<Int>& v) const {
        if (v.size() != d_) throw DimensionMismatch("matrix-vector dimension mismatch");
        std::vector<Int> r(d_, Int(0));
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    std::vector<Int> row_sums() const {
        std::vector<Int> r(d_, Int(0));
        for (std::size_t i = 0; i < d_; ++i)
            for (std::size_t j = 0; j < d_; ++j) r[i] += (*this)(i, j);
        return r;
    }

    Int one_norm() const {  // sum of |entries|
        Int s = 0;
        for (const Int& x : a_) s += abs(x);
        return s;
    }

    Int max_entry() const {
        Int m = a_.empty() ? Int(0) : abs(a_[0]);
        for (const Int& x : a_)
            if (abs(x) > m) m = abs(x);
        return m;
    }

    bool strictly_positive() const {
        for (const Int& x : a_)
            if (x <= 0) return false;
        return true;
    }

    bool nonnegative() const {
        for (const Int& x : a_)
            if (x < 0) return false;
        return true;
    }

    Int det() const;  // Bareiss, exact

  private:
    std::size_t d_ = 0;
    std::vector<Int> a_;
};

inline Int IntMatrix::det() const {
    std::size_t n = d_;
    if (n == 0) return Int(1);
    std::vector<Int> m(a_);
    auto at = [&](std::size_t i, std::size_t j) -> Int& { return m[i * n + j]; };
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (at(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && at(p, k) == 0) ++p;
            if (p == n) return Int(0);
            for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                Int t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
                mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
                at(i, j) = t;
            }
        prev = at(k, k);
    }
    return sign > 0 ? at(n - 1, n - 1) : Int(-at(n - 1, n - 1));
}

// --- exact rational linear algebra on small matrices ---

using RatMatrix = std::vector<std::vector<Rational>>;

inline RatMatrix to_rational(const IntMatrix& m) {
    RatMatrix r(m.dim(), std::vector<Rational>(m.dim()));
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) r[i][j] = Rational(m(i, j));
    return r;
}

// Row-reduce in place; returns rank and records pivot columns.
inline std::size_t row_reduce(RatMatrix& m, std::vector<std::size_t>* pivot_cols = nullptr) {
    if (m.empty()) return 0;
    std::size_t rows = m.size(), cols = m[0].size(), r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        Rational inv = 1 / m[r][c];
        for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c] == 0) continue;
            Rational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        if (pivot_cols) pivot_cols->push_back(c);
        ++r;
    }
    return r;
}

inline std::size_t rank(const IntMatrix& m) {
    RatMatrix r = to_rational(m);
    return row_reduce(r);
}

// Integral basis of ker(m) over Q (denominators cleared per vector).
inline std::vector<std::vector<Int>> kernel_basis(const IntMatrix& m) {
    std::size_t d = m.dim();
    RatMatrix r = to_rational(m);
    std::vector<std::size_t> piv;
    row_reduce(r, &piv);
    std::vector<bool> is_pivot(d, false);
    for (std::size_t c : piv) is_pivot[c] = true;
    std::vector<std::vector<Int>> basis;
    for (std::size_t free = 0; free < d; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rational> v(d, Rational(0));
        v[free] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r[i][free];
        Int lcm = 1;
        for (const auto& x : v) lcm = Int(lcm * x.get_den() / gcd(lcm, Int(x.get_den())));
        std::vector<Int> w(d);
        for (std::size_t i = 0; i < d; ++i) w[i] = Int(v[i] * Rational(lcm));
        basis.push_back(std::move(w));
    }
    return basis;
}

// Does m x = b have a rational solution?  (Membership of b in the column
// space; for our antisymmetric integer matrices rational solvability is
// equivalent to real solvability.)
inline bool column_space_contains(const IntMatrix& m, const std::vector<Int>& b) {
    std::size_t d = m.dim();
    RatMatrix aug(d, std::vector<Rational>(d + 1));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) aug[i][j] = Rational(m(i, j));
        aug[i][d] = Rational(b[i]);
    }
    RatMatrix plain(d, std::vector<Rational>(d));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) plain[i][j] = Rational(m(i, j));
    return row_reduce(aug) == row_reduce(plain);
}

// Index in Z^d of the lattice spanned by the given integer vectors (0 when
// the span has rank < d).  Row Hermite reduction: keep one pivot row per
// column, folding new vectors in with extended gcd combinations; the index is
// the product of the pivots.
inline Int lattice_index(const std::vector<std::vector<Int>>& gens, std::size_t d) {
    std::vector<std::vector<Int>> rows(d);  // rows[c] has its pivot at column c, or empty
    for (const auto& gen : gens) {
        std::vector<Int> v = gen;
        for (std::size_t c = 0; c < d; ++c) {
            if (v[c] == 0) continue;
            if (rows[c].empty()) {
                if (v[c] < 0)
                    for (auto& x : v) x = -x;
                rows[c] = std::move(v);
                break;
            }
            Int g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), rows[c][c].get_mpz_t(),
                       v[c].get_mpz_t());
            Int a = rows[c][c] / g, b = v[c] / g;
            std::vector<Int> combo(d), reduced(d);
            for (std::size_t j = 0; j < d; ++j) {
                combo[j] = s * rows[c][j] + t * v[j];
                reduced[j] = a * v[j] - b * rows[c][j];
            }
            rows[c] = std::move(combo);
            v = std::move(reduced);
        }
    }
    Int index(1);
    for (std::size_t c = 0; c < d; ++c) {
        if (rows[c].empty()) return Int(0);
        index *= rows[c][c];
    }
    return abs(index);
}

}  // namespace ietlab
