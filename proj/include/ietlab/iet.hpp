#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <optional>
#include <vector>

#include "ietlab/observable.hpp"
#include "ietlab/permutation.hpp"
#include "ietlab/scalar.hpp"

namespace ietlab {

struct IETOptions {
    bool strict_irreducible = false;  // reject reducible permutations
    bool normalize = true;            // rescale lengths to total 1
};

// Interval exchange transformation T_{lambda,pi} on [0,1).  Subintervals are
// closed on the left and open on the right; T restricted to the top interval
// of label alpha is x -> x + w_alpha.  Immutable after construction.
class IET {
  public:
    using Options = IETOptions;

    IET(Permutation perm, std::vector<Scalar> lengths, Options opt = Options())
        : perm_(std::move(perm)), lengths_(std::move(lengths)) {
        std::size_t d = perm_.size();
        if (lengths_.size() != d) throw DimensionMismatch("need one length per label");
        if (opt.strict_irreducible && !perm_.irreducible())
            throw ReduciblePermutation("permutation is reducible: " + perm_.to_string());
        for (const auto& l : lengths_)
            if (l.sign() <= 0) throw NonPositiveLength("lengths must be strictly positive");
        Scalar total(0);
        for (const auto& l : lengths_) total = total + l;
        if (opt.normalize) {
            for (auto& l : lengths_) l = l / total;
            total_ = Scalar(1);
        } else {
            total_ = total;
        }
        // left endpoints in top order and in image (bottom) order
        top_left_.assign(d, Scalar(0));
        bot_left_.assign(d, Scalar(0));
        Scalar acc(0);
        for (std::size_t p = 0; p < d; ++p) {
            top_left_[p] = acc;
            acc = acc + lengths_[perm_.top_at(p)];
        }
        acc = Scalar(0);
        for (std::size_t p = 0; p < d; ++p) {
            bot_left_[p] = acc;
            acc = acc + lengths_[perm_.bottom_at(p)];
        }
        trans_.assign(d, Scalar(0));
        for (std::size_t a = 0; a < d; ++a)
            trans_[a] = bot_left_[perm_.bottom_pos(a)] - top_left_[perm_.top_pos(a)];
    }

    const Permutation& perm() const { return perm_; }
    std::size_t size() const { return perm_.size(); }
    const std::vector<Scalar>& lengths() const { return lengths_; }
    const Scalar& length(std::size_t label) const { return lengths_[label]; }
    const Scalar& total() const { return total_; }
    const Scalar& translation(std::size_t label) const { return trans_[label]; }
    const Scalar& top_left(std::size_t pos) const { return top_left_[pos]; }

    bool rational_mode() const {
        for (const auto& l : lengths_)
            if (!l.is_rational()) return false;
        return true;
    }

    // Label of the top interval containing x (left-closure at breakpoints).
    std::size_t label_of(const Scalar& x) const {
        if (x.sign() < 0 || compare(x, total_) >= 0)
            throw OutOfDomain("point outside the exchanged interval");
        std::size_t d = size();
        for (std::size_t p = d; p-- > 0;) {
            if (compare(x, top_left_[p]) >= 0) return perm_.top_at(p);
        }
        return perm_.top_at(0);
    }

    Scalar apply(const Scalar& x) const { return x + trans_[label_of(x)]; }

    // True when x coincides with an interior discontinuity of T.  Decidable
    // in rational mode; in ball mode an actual straddle surfaces as
    // PrecisionExhausted inside apply() instead.
    bool at_discontinuity(const Scalar& x) const {
        if (!x.is_rational()) return false;
        for (std::size_t p = 1; p < size(); ++p)
            if (top_left_[p].is_rational() && x.rational() == top_left_[p].rational()) return true;
        return false;
    }

    struct Orbit {
        std::vector<Scalar> points;                 // x, Tx, ..., T^n x
        std::optional<std::size_t> singular_step;   // first hit of a discontinuity
    };

    // Forward orbit [x, Tx, ..., T^n x].  With strict_singular the orbit
    // aborts with SingularOrbit at the first discontinuity hit; otherwise the
    // hit is recorded and iteration continues by left-closure.
    Orbit orbit(const Scalar& x, std::size_t n, bool strict_singular = false) const {
        Orbit o;
        o.points.reserve(n + 1);
        Scalar cur = x;
        for (std::size_t i = 0; i <= n; ++i) {
            if (!o.singular_step && at_discontinuity(cur)) {
                if (strict_singular)
                    throw SingularOrbit(i, "orbit hits a discontinuity at step " +
                                               std::to_string(i));
                o.singular_step = i;
            }
            o.points.push_back(cur);
            if (i < n) cur = apply(cur);
        }
        return o;
    }

    double birkhoff_sum(const Observable& f, const Scalar& x, std::size_t n) const {
        double s = 0;
        Scalar cur = x;
        for (std::size_t i = 0; i < n; ++i) {
            s += f.eval(cur.to_double());
            cur = apply(cur);
        }
        return s;
    }

    // Sum_{n<N} e^{2 pi i n theta} f(T^n x).
    std::complex<double> twisted_birkhoff_sum(const Observable& f, const Scalar& x, double theta,
                                              std::size_t n_terms) const {
        const std::complex<double> rot =
            std::exp(std::complex<double>(0, 2 * std::numbers::pi * theta));
        std::complex<double> phase(1, 0), s(0, 0);
        Scalar cur = x;
        for (std::size_t i = 0; i < n_terms; ++i) {
            s += phase * f.eval(cur.to_double());
            phase *= rot;
            cur = apply(cur);
        }
        return s;
    }

    std::complex<double> twisted_birkhoff_sum(const CxObservable& f, const Scalar& x, double theta,
                                              std::size_t n_terms) const {
        const std::complex<double> i1(0, 1);
        return twisted_birkhoff_sum(f.re, x, theta, n_terms) +
               i1 * twisted_birkhoff_sum(f.im, x, theta, n_terms);
    }

  private:
    Permutation perm_;
    std::vector<Scalar> lengths_;
    Scalar total_;
    std::vector<Scalar> top_left_, bot_left_, trans_;
};

inline IET make_iet(const Permutation& perm, std::vector<Scalar> lengths, bool strict = false) {
    IET::Options opt;
    opt.strict_irreducible = strict;
    return IET(perm, std::move(lengths), opt);
}

inline IET make_iet(const Permutation& perm, const std::vector<Rational>& lengths,
                    bool strict = false) {
    std::vector<Scalar> s(lengths.begin(), lengths.end());
    return make_iet(perm, std::move(s), strict);
}

// The 2-IET realizing the rotation x -> x + theta (mod 1).
inline IET rotation_iet(const Scalar& theta) {
    Permutation swap = Permutation::parse("A B / B A");
    std::vector<Scalar> len{Scalar(Rational(1)) - theta, theta};
    return make_iet(swap, std::move(len));
}

}  // namespace ietlab
