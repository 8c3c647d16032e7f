#pragma once

#include <mpfr.h>

#include <string>
#include <utility>

#include "ietlab/errors.hpp"
#include "ietlab/rational.hpp"

namespace ietlab {

// RAII wrapper over mpfr_t.
class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec = 64) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }
    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    int sgn() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }

  private:
    mpfr_t v_;
};

// Certified ball: every arithmetic result's ball contains the true value.
// mid carries the working precision; rad is a 64-bit upper bound, maintained
// with upward rounding.  Sign queries fail (PrecisionExhausted) when 0 lies
// strictly inside the ball.
class Ball {
  public:
    static constexpr mpfr_prec_t kRadPrec = 64;

    explicit Ball(mpfr_prec_t prec = 256) : mid_(prec), rad_(kRadPrec) {}

    static Ball from_rational(const Rational& q, mpfr_prec_t prec) {
        Ball b(prec);
        int t = mpfr_set_q(b.mid_.get(), q.get_mpq_t(), MPFR_RNDN);
        if (t != 0) b.bump_ulp();
        return b;
    }
    static Ball from_long(long x, mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_set_si(b.mid_.get(), x, MPFR_RNDN);  // exact for any sane prec
        return b;
    }
    // Enclosure of the exact interval [lo, hi].
    static Ball from_rational_interval(const Rational& lo, const Rational& hi, mpfr_prec_t prec) {
        if (hi < lo) throw OutOfDomain("interval endpoints out of order");
        BigFloat l(prec), h(prec);
        mpfr_set_q(l.get(), lo.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(h.get(), hi.get_mpq_t(), MPFR_RNDU);
        return from_endpoints(l, h, prec);
    }

    // Enclosure of sqrt(q) for q >= 0, from directed-rounding endpoints.
    static Ball sqrt_of_rational(const Rational& q, mpfr_prec_t prec) {
        if (q < 0) throw OutOfDomain("sqrt of negative rational");
        BigFloat lo(prec), hi(prec);
        mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
        mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
        mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
        mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
        return from_endpoints(lo, hi, prec);
    }

    mpfr_prec_t prec() const { return mid_.prec(); }
    const BigFloat& mid() const { return mid_; }
    const BigFloat& rad() const { return rad_; }
    double to_double() const { return mid_.to_double(); }
    double rad_double() const {
        double r = mpfr_get_d(rad_.get(), MPFR_RNDU);
        return r;
    }

    bool contains(const Rational& q) const {
        BigFloat lo(prec() + 8), hi(prec() + 8);
        mpfr_sub(lo.get(), mid_.get(), rad_.get(), MPFR_RNDD);
        mpfr_add(hi.get(), mid_.get(), rad_.get(), MPFR_RNDU);
        return mpfr_cmp_q(lo.get(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(hi.get(), q.get_mpq_t()) >= 0;
    }

    friend Ball operator+(const Ball& a, const Ball& b) {
        Ball r(std::max(a.prec(), b.prec()));
        int t = mpfr_add(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
        mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        if (t != 0) r.bump_ulp();
        return r;
    }
    friend Ball operator-(const Ball& a, const Ball& b) {
        Ball r(std::max(a.prec(), b.prec()));
        int t = mpfr_sub(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
        mpfr_add(r.rad_.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        if (t != 0) r.bump_ulp();
        return r;
    }
    friend Ball operator-(const Ball& a) {
        Ball r = a;
        mpfr_neg(r.mid_.get(), r.mid_.get(), MPFR_RNDN);
        return r;
    }
    friend Ball operator*(const Ball& a, const Ball& b) {
        Ball r(std::max(a.prec(), b.prec()));
        int t = mpfr_mul(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
        // |a||rb| + |b||ra| + ra rb, all rounded up
        BigFloat t1(kRadPrec), t2(kRadPrec), t3(kRadPrec);
        abs_mul_up(t1, a.mid_, b.rad_);
        abs_mul_up(t2, b.mid_, a.rad_);
        mpfr_mul(t3.get(), a.rad_.get(), b.rad_.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), t1.get(), t2.get(), MPFR_RNDU);
        mpfr_add(r.rad_.get(), r.rad_.get(), t3.get(), MPFR_RNDU);
        if (t != 0) r.bump_ulp();
        return r;
    }
    friend Ball operator/(const Ball& a, const Ball& b) {
        // Denominator ball must exclude zero.
        BigFloat babs(kRadPrec);
        mpfr_abs(babs.get(), b.mid_.get(), MPFR_RNDD);
        if (mpfr_cmp(babs.get(), b.rad_.get()) <= 0)
            throw PrecisionExhausted("ball division: denominator interval contains 0");
        Ball r(std::max(a.prec(), b.prec()));
        int t = mpfr_div(r.mid_.get(), a.mid_.get(), b.mid_.get(), MPFR_RNDN);
        // |x/y - ma/mb| <= (ra + |ma/mb| rb) / (|mb| - rb)
        BigFloat num(kRadPrec), den(kRadPrec);
        abs_mul_up(num, r.mid_, b.rad_);
        mpfr_add(num.get(), num.get(), a.rad_.get(), MPFR_RNDU);
        mpfr_sub(den.get(), babs.get(), b.rad_.get(), MPFR_RNDD);
        mpfr_div(r.rad_.get(), num.get(), den.get(), MPFR_RNDU);
        if (t != 0) r.bump_ulp();
        return r;
    }

    // Sign with certification; throws when undecidable.
    int sign() const {
        if (mpfr_zero_p(mid_.get()) && mpfr_zero_p(rad_.get())) return 0;
        BigFloat a(kRadPrec);
        mpfr_abs(a.get(), mid_.get(), MPFR_RNDD);
        if (mpfr_cmp(a.get(), rad_.get()) > 0) return mid_.sgn();
        throw PrecisionExhausted("ball sign: 0 interior to interval");
    }

    // Certified floor; throws when the enclosure straddles an integer.
    Int floor() const {
        BigFloat lo(prec() + 8), hi(prec() + 8);
        mpfr_sub(lo.get(), mid_.get(), rad_.get(), MPFR_RNDD);
        mpfr_add(hi.get(), mid_.get(), rad_.get(), MPFR_RNDU);
        mpfr_floor(lo.get(), lo.get());
        mpfr_floor(hi.get(), hi.get());
        Int flo, fhi;
        mpfr_get_z(flo.get_mpz_t(), lo.get(), MPFR_RNDN);
        mpfr_get_z(fhi.get_mpz_t(), hi.get(), MPFR_RNDN);
        if (flo != fhi) throw PrecisionExhausted("ball floor: enclosure straddles an integer");
        return flo;
    }

  private:
    static Ball from_endpoints(const BigFloat& lo, const BigFloat& hi, mpfr_prec_t prec) {
        Ball b(prec);
        mpfr_add(b.mid_.get(), lo.get(), hi.get(), MPFR_RNDN);
        mpfr_div_2ui(b.mid_.get(), b.mid_.get(), 1, MPFR_RNDN);
        BigFloat half(kRadPrec);
        mpfr_sub(half.get(), hi.get(), lo.get(), MPFR_RNDU);
        mpfr_div_2ui(half.get(), half.get(), 1, MPFR_RNDU);
        mpfr_set(b.rad_.get(), half.get(), MPFR_RNDU);
        b.bump_ulp();
        b.bump_ulp();  // midpoint rounding, both directions
        return b;
    }

    static void abs_mul_up(BigFloat& out, const BigFloat& m, const BigFloat& r) {
        mpfr_mul(out.get(), m.get(), r.get(), MPFR_RNDU);
        mpfr_abs(out.get(), out.get(), MPFR_RNDU);
    }

    // Account for one rounding of mid at its own precision: add 2^(exp-p+1).
    void bump_ulp() {
        if (mpfr_zero_p(mid_.get())) return;
        mpfr_exp_t e = mpfr_get_exp(mid_.get());
        BigFloat ulp(kRadPrec);
        mpfr_set_ui_2exp(ulp.get(), 1, e - mid_.prec() + 1, MPFR_RNDU);
        mpfr_add(rad_.get(), rad_.get(), ulp.get(), MPFR_RNDU);
    }

    BigFloat mid_;
    BigFloat rad_;
};

}  // namespace ietlab
