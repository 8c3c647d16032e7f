#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ietlab/errors.hpp"

namespace ietlab {

using Int = mpz_class;       // arbitrary-precision integer
using Rational = mpq_class;  // exact rational, always canonical

inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0) throw ConfigError("bad rational literal: " + s);
    q.canonicalize();
    return q;
}

// "p/q" (or plain integer) with canonical sign on the numerator.
inline std::string rational_to_string(const Rational& q) {
    return q.get_str();
}

inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int rational_floor(const Rational& q) {
    return floor_div(q.get_num(), q.get_den());
}

inline Rational rational_mod1(const Rational& q) {
    return q - Rational(rational_floor(q));
}

// Distance to the nearest integer, ||q||_{R/Z}, as an exact rational in [0, 1/2].
inline Rational dist_to_integers(const Rational& q) {
    Rational f = rational_mod1(q);
    Rational other = 1 - f;
    return f <= other ? f : other;
}

// Continued fraction digits of q in [0,1): q = [0; a1, a2, ...].  For a
// rational input the expansion is finite; at most max_digits are returned.
inline std::vector<Int> continued_fraction(Rational q, std::size_t max_digits) {
    std::vector<Int> digits;
    if (q < 0 || q >= 1) throw OutOfDomain("continued_fraction expects q in [0,1)");
    while (q != 0 && digits.size() < max_digits) {
        Rational inv = 1 / q;
        Int a = rational_floor(inv);
        digits.push_back(a);
        q = inv - Rational(a);
    }
    return digits;
}

inline double to_double(const Rational& q) {
    return q.get_d();
}

inline Int fibonacci(unsigned long n) {
    Int f;
    mpz_fib_ui(f.get_mpz_t(), n);
    return f;
}

}  // namespace ietlab
