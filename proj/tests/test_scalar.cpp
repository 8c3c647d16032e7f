#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ietlab/scalar.hpp"

using namespace ietlab;

TEST_CASE("rational mode is exact and closed under arithmetic") {
    Rational a = make_rational(3, 10), b = make_rational(7, 10);
    CHECK(a + b == 1);
    CHECK(b - a == make_rational(2, 5));
    CHECK(a * b == make_rational(21, 100));
    CHECK(Scalar(a).sign() == 1);
    CHECK((Scalar(a) - Scalar(a)).sign() == 0);
    CHECK(rational_to_string(make_rational(-4, 6)) == "-2/3");
    CHECK(rational_from_string("6/4") == make_rational(3, 2));
}

TEST_CASE("continued fraction of rationals") {
    // 3/7 = [0; 2, 3]
    auto d = continued_fraction(make_rational(3, 7), 10);
    REQUIRE(d.size() == 2);
    CHECK(d[0] == 2);
    CHECK(d[1] == 3);
    CHECK(continued_fraction(Rational(0), 5).empty());
}

TEST_CASE("ball arithmetic encloses the exact value", "[property]") {
    std::mt19937_64 rng(12345);
    for (int iter = 0; iter < 200; ++iter) {
        Rational qa = make_rational(static_cast<long>(rng() % 2001) - 1000,
                                    static_cast<long>(rng() % 999) + 1);
        Rational qb = make_rational(static_cast<long>(rng() % 2001) - 1000,
                                    static_cast<long>(rng() % 999) + 1);
        Ball ba = Ball::from_rational(qa, 128), bb = Ball::from_rational(qb, 128);
        CHECK((ba + bb).contains(qa + qb));
        CHECK((ba - bb).contains(qa - qb));
        CHECK((ba * bb).contains(qa * qb));
        if (qb != 0 && abs(qb.get_num()) > 0) {
            Ball q = ba / bb;
            CHECK(q.contains(qa / qb));
        }
    }
}

TEST_CASE("ball sign queries fail instead of guessing") {
    Ball one = Ball::from_long(1, 64);
    Ball tiny = Ball::sqrt_of_rational(Rational(2), 64);
    Ball z = tiny - tiny;  // contains 0 with nonzero radius
    CHECK_THROWS_AS(z.sign(), PrecisionExhausted);
    CHECK(one.sign() == 1);
    CHECK((-one).sign() == -1);
    CHECK(Ball::from_long(0, 64).sign() == 0);
}

TEST_CASE("ball floor certifies or refuses") {
    Ball s5 = Ball::sqrt_of_rational(Rational(5), 128);
    CHECK(s5.floor() == 2);
    Ball edge = Ball::from_rational_interval(make_rational(9, 10), make_rational(11, 10), 64);
    CHECK_THROWS_AS(edge.floor(), PrecisionExhausted);
}

TEST_CASE("sqrt enclosure is tight at the working precision") {
    Ball s2 = Ball::sqrt_of_rational(Rational(2), 256);
    CHECK(s2.rad_double() < 1e-70);
    Rational approx = make_rational(665857, 470832);  // convergent of sqrt 2
    Ball err = s2 - Ball::from_rational(approx, 256);
    CHECK(err.to_double() < 0.0);  // convergent overshoots
}

TEST_CASE("precision retry escalates to the cap") {
    int calls = 0;
    PrecisionPolicy policy{128, 1024};
    auto result = with_precision_retry<int>(policy, [&](mpfr_prec_t bits) -> int {
        ++calls;
        if (bits < 512) throw PrecisionExhausted("need more bits");
        return static_cast<int>(bits);
    });
    CHECK(result == 512);
    CHECK(calls == 3);
    CHECK_THROWS_AS(with_precision_retry<int>(
                        policy, [](mpfr_prec_t) -> int { throw PrecisionExhausted("never"); }),
                    PrecisionExhausted);
}

TEST_CASE("mixed-mode scalar arithmetic promotes to ball") {
    Scalar r(make_rational(1, 3));
    Scalar b(Ball::from_long(2, 128));
    Scalar s = r + b;
    CHECK(!s.is_rational());
    CHECK(s.ball().contains(make_rational(7, 3)));
}
