#pragma once

#include <functional>
#include <variant>

#include "ietlab/ball.hpp"
#include "ietlab/rational.hpp"

namespace ietlab {

// A length/coordinate: exact rational, or certified ball at some precision.
// Mixed-mode arithmetic promotes the rational side into the ball's precision,
// so a computation is exact until the first ball operand appears.
class Scalar {
  public:
    Scalar() : v_(Rational(0)) {}
    Scalar(Rational q) : v_(std::move(q)) {}  // NOLINT: implicit by design
    Scalar(Ball b) : v_(std::move(b)) {}      // NOLINT
    Scalar(long n) : v_(Rational(n)) {}       // NOLINT

    bool is_rational() const { return std::holds_alternative<Rational>(v_); }
    const Rational& rational() const { return std::get<Rational>(v_); }
    const Ball& ball() const { return std::get<Ball>(v_); }

    double to_double() const {
        return is_rational() ? ietlab::to_double(rational()) : ball().to_double();
    }

    friend Scalar operator+(const Scalar& a, const Scalar& b) { return binop(a, b, ops::add{}); }
    friend Scalar operator-(const Scalar& a, const Scalar& b) { return binop(a, b, ops::sub{}); }
    friend Scalar operator*(const Scalar& a, const Scalar& b) { return binop(a, b, ops::mul{}); }
    friend Scalar operator/(const Scalar& a, const Scalar& b) { return binop(a, b, ops::div{}); }
    friend Scalar operator-(const Scalar& a) {
        if (a.is_rational()) return Scalar(Rational(-a.rational()));
        return Scalar(-a.ball());
    }

    // -1/0/+1; PrecisionExhausted in ball mode when 0 is interior.
    int sign() const {
        if (is_rational()) return sgn(rational());
        return ball().sign();
    }

    friend int compare(const Scalar& a, const Scalar& b) { return (a - b).sign(); }
    friend bool operator<(const Scalar& a, const Scalar& b) { return compare(a, b) < 0; }
    friend bool operator<=(const Scalar& a, const Scalar& b) { return compare(a, b) <= 0; }
    friend bool operator>(const Scalar& a, const Scalar& b) { return compare(a, b) > 0; }
    friend bool operator>=(const Scalar& a, const Scalar& b) { return compare(a, b) >= 0; }

    Int floor() const {
        if (is_rational()) return rational_floor(rational());
        return ball().floor();
    }

  private:
    struct ops {
        struct add {
            template <class T>
            T operator()(const T& x, const T& y) const { return x + y; }
        };
        struct sub {
            template <class T>
            T operator()(const T& x, const T& y) const { return x - y; }
        };
        struct mul {
            template <class T>
            T operator()(const T& x, const T& y) const { return x * y; }
        };
        struct div {
            Rational operator()(const Rational& x, const Rational& y) const {
                if (y == 0) throw NumericError("rational division by zero");
                return x / y;
            }
            Ball operator()(const Ball& x, const Ball& y) const { return x / y; }
        };
    };

    static int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

    template <class Op>
    static Scalar binop(const Scalar& a, const Scalar& b, Op op) {
        if (a.is_rational() && b.is_rational()) return Scalar(op(a.rational(), b.rational()));
        const Ball& ba =
            a.is_rational() ? Ball::from_rational(a.rational(), b.ball().prec()) : a.ball();
        const Ball& bb =
            b.is_rational() ? Ball::from_rational(b.rational(), a.ball().prec()) : b.ball();
        return Scalar(op(ba, bb));
    }

    std::variant<Rational, Ball> v_;
};

// Retry policy for ball-mode computations: escalate precision x2 on
// PrecisionExhausted, up to a cap.  The computation is re-run from scratch,
// so it must be a pure function of the requested precision.
struct PrecisionPolicy {
    mpfr_prec_t initial_bits = 256;
    mpfr_prec_t max_bits = 8192;
};

template <class T>
T with_precision_retry(const PrecisionPolicy& policy, const std::function<T(mpfr_prec_t)>& fn) {
    mpfr_prec_t bits = policy.initial_bits;
    for (;;) {
        try {
            return fn(bits);
        } catch (const PrecisionExhausted&) {
            if (bits >= policy.max_bits) throw;
            bits *= 2;
            if (bits > policy.max_bits) bits = policy.max_bits;
        }
    }
}

}  // namespace ietlab
