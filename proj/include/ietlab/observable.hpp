#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "ietlab/errors.hpp"
#include "ietlab/rational.hpp"

namespace ietlab {

// One piece of a piecewise function on [lo, hi).  Linear pieces carry exact
// rational data (value at lo, slope); generic pieces carry a callable plus
// the metadata the bounds need (closed-form integral, Lipschitz constant,
// sup bound).
struct Piece {
    Rational lo, hi;
    bool linear = true;
    Rational v0, slope;
    std::function<double(double)> fn;
    double fn_integral = 0.0;
    double fn_lip = 0.0;
    double fn_sup = 0.0;

    double width_d() const { return to_double(hi - lo); }
    double eval(double x) const {
        if (linear) return to_double(v0) + to_double(slope) * (x - to_double(lo));
        return fn(x);
    }
    double integral_d() const {
        if (linear) return to_double(exact_integral());
        return fn_integral;
    }
    Rational exact_integral() const {
        if (!linear) throw NumericError("exact integral requested on a generic piece");
        Rational w = hi - lo;
        return w * (v0 + slope * w / 2);
    }
    double sup_bound() const {
        if (linear) {
            double a = std::abs(to_double(v0));
            double b = std::abs(to_double(v0 + slope * (hi - lo)));
            return std::max(a, b);
        }
        return fn_sup;
    }
    double lip_bound() const { return linear ? std::abs(to_double(slope)) : fn_lip; }
};

// Piecewise-Lipschitz observable on [0,1).  Pieces tile the interval; gaps in
// the caller's list are filled with zero pieces.  All evaluation is double;
// means use the per-piece exact integrals so centering carries no quadrature
// error.
class Observable {
  public:
    Observable() : Observable(raw_tag{}) {
        pieces_ = {zero_piece(Rational(0), Rational(1))};
        rebuild();
    }

    static Observable from_pieces(std::vector<Piece> pieces) {
        std::sort(pieces.begin(), pieces.end(),
                  [](const Piece& a, const Piece& b) { return a.lo < b.lo; });
        std::vector<Piece> full;
        Rational cur(0);
        for (auto& p : pieces) {
            if (p.lo < cur) throw ConfigError("observable pieces overlap");
            if (p.hi <= p.lo) continue;
            if (p.lo > cur) full.push_back(zero_piece(cur, p.lo));
            cur = p.hi;
            full.push_back(std::move(p));
        }
        if (cur > 1) throw OutOfDomain("observable piece beyond [0,1)");
        if (cur < 1) full.push_back(zero_piece(cur, Rational(1)));
        Observable f{raw_tag{}};
        f.pieces_ = std::move(full);
        f.offset_ = 0;
        f.rebuild();
        return f;
    }

    static Observable constant(const Rational& c) {
        Piece p;
        p.lo = 0;
        p.hi = 1;
        p.v0 = c;
        p.slope = 0;
        Observable f{raw_tag{}};
        f.pieces_ = {p};
        f.offset_ = 0;
        f.rebuild();
        return f;
    }

    static Observable indicator(const Rational& a, const Rational& b) {
        Piece p;
        p.lo = a;
        p.hi = b;
        p.v0 = 1;
        p.slope = 0;
        return from_pieces({p});
    }

    // cos(2 pi k x + phase), one generic piece with a closed-form integral.
    static Observable cosine(int k, double phase = 0.0) {
        if (k == 0) return constant(Rational(1));
        Piece p;
        p.lo = 0;
        p.hi = 1;
        p.linear = false;
        const double w = 2 * std::numbers::pi * k;
        p.fn = [w, phase](double x) { return std::cos(w * x + phase); };
        p.fn_integral = (std::sin(w + phase) - std::sin(phase)) / w;
        p.fn_lip = std::abs(w);
        p.fn_sup = 1.0;
        return from_pieces({p});
    }

    // The section-7.3 bump on [lo, lo+s): zero collars of width s/10, linear
    // ramps, plateau of width s/2 centered.  All breakpoints stay rational.
    static Observable bump(const Rational& lo, const Rational& s) {
        Rational r10 = s / 10, r4 = s / 4;
        Piece up, flat, down;
        up.lo = lo + r10;
        up.hi = lo + r4;
        up.v0 = 0;
        up.slope = 1 / (r4 - r10);
        flat.lo = lo + r4;
        flat.hi = lo + s - r4;
        flat.v0 = 1;
        flat.slope = 0;
        down.lo = lo + s - r4;
        down.hi = lo + s - r10;
        down.v0 = 1;
        down.slope = -up.slope;
        return from_pieces({up, flat, down});
    }

    const std::vector<Piece>& pieces() const { return pieces_; }
    const Rational& offset() const { return offset_; }
    bool all_linear() const {
        for (const auto& p : pieces_)
            if (!p.linear) return false;
        return true;
    }

    double eval(double x) const {
        if (x < 0.0 || x >= 1.0) throw OutOfDomain("observable evaluated outside [0,1)");
        std::size_t i = locate(x);
        return pieces_[i].eval(x) + to_double(offset_);
    }

    double mean() const {
        double m = to_double(offset_);
        for (const auto& p : pieces_) m += p.integral_d();
        return m;
    }
    Rational mean_exact() const {
        Rational m = offset_;
        for (const auto& p : pieces_) m += p.exact_integral();
        return m;
    }

    // Upper bounds; equalities for piecewise-linear data.
    double sup_norm() const { return sup_; }
    double lip() const { return lip_; }
    double lip_norm() const { return sup_ + lip_; }  // ||f||_L = ||f||_inf + Lip

    double l1_norm_nonneg() const {
        // valid for f >= 0 (bumps); equals integral
        return mean();
    }
    Rational l1_norm_nonneg_exact() const { return mean_exact(); }

    // integral of f^2; exact closed form on linear pieces, piecewise-constant
    // Riemann bound fallback otherwise (generic pieces use their sup)
    double l2_norm_sq() const {
        double acc = 0;
        double off = to_double(offset_);
        for (const auto& p : pieces_) {
            double w = p.width_d();
            if (p.linear) {
                double v0 = to_double(p.v0) + off;
                double v1 = v0 + to_double(p.slope) * w;
                acc += w * (v0 * v0 + v0 * v1 + v1 * v1) / 3.0;
            } else {
                acc += w * (p.fn_sup + std::abs(off)) * (p.fn_sup + std::abs(off));
            }
        }
        return acc;
    }

    Observable centered() const {
        Observable f = *this;
        if (all_linear()) {
            f.offset_ = offset_ - mean_exact();
        } else {
            // fall back to a rational close to the double mean; exactness is
            // only promised for all-linear observables
            f.offset_ = offset_ - Rational(mean());
        }
        f.rebuild();
        return f;
    }

    Observable scaled(const Rational& c) const {
        Observable f = *this;
        for (auto& p : f.pieces_) {
            if (p.linear) {
                p.v0 *= c;
                p.slope *= c;
            } else {
                double cd = to_double(c);
                auto base = p.fn;
                p.fn = [base, cd](double x) { return cd * base(x); };
                p.fn_integral *= cd;
                p.fn_lip *= std::abs(cd);
                p.fn_sup *= std::abs(cd);
            }
        }
        f.offset_ *= c;
        f.rebuild();
        return f;
    }

  private:
    struct raw_tag {};
    explicit Observable(raw_tag) {}

    static Piece zero_piece(const Rational& lo, const Rational& hi) {
        Piece p;
        p.lo = lo;
        p.hi = hi;
        p.v0 = 0;
        p.slope = 0;
        return p;
    }

    void rebuild() {
        ends_.clear();
        ends_.reserve(pieces_.size());
        double off = std::abs(to_double(offset_));
        sup_ = 0;
        lip_ = 0;
        for (const auto& p : pieces_) {
            ends_.push_back(to_double(p.hi));
            sup_ = std::max(sup_, p.sup_bound() + off);
            lip_ = std::max(lip_, p.lip_bound());
        }
    }

    std::size_t locate(double x) const {
        auto it = std::upper_bound(ends_.begin(), ends_.end(), x);
        std::size_t i = static_cast<std::size_t>(it - ends_.begin());
        return std::min(i, pieces_.size() - 1);
    }

    std::vector<Piece> pieces_;
    Rational offset_;
    std::vector<double> ends_;
    double sup_ = 0, lip_ = 0;
};

// Complex-valued observable assembled from real and imaginary parts; enough
// for the e^{2 pi i x} test functions.
struct CxObservable {
    Observable re, im;

    static CxObservable exp2pix() {
        CxObservable f;
        f.re = Observable::cosine(1, 0.0);
        f.im = Observable::cosine(1, -std::numbers::pi / 2);  // sin(2 pi x)
        return f;
    }
    std::complex<double> eval(double x) const { return {re.eval(x), im.eval(x)}; }
    double sup_norm() const { return std::hypot(re.sup_norm(), im.sup_norm()); }
};

}  // namespace ietlab
