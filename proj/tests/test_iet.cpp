#include <catch2/catch_amalgamated.hpp>
#include <complex>
#include <random>

#include "fixtures.hpp"
#include "ietlab/iet.hpp"

using namespace ietlab;
using Catch::Matchers::WithinAbs;

namespace {
IET quarter_swap() {
    return make_iet(Permutation::parse("A B / B A"),
                    std::vector<Rational>{make_rational(1, 4), make_rational(3, 4)});
}
}  // namespace

TEST_CASE("make_iet computes translations") {
    IET t = quarter_swap();
    CHECK(t.translation(0).rational() == make_rational(3, 4));   // w_A
    CHECK(t.translation(1).rational() == make_rational(-1, 4));  // w_B

    IET t3 = make_iet(Permutation::symmetric(3),
                      std::vector<Rational>{make_rational(1, 3), make_rational(1, 3),
                                            make_rational(1, 3)});
    CHECK(t3.translation(0).rational() == make_rational(2, 3));
    CHECK(t3.translation(1).rational() == 0);
    CHECK(t3.translation(2).rational() == make_rational(-2, 3));
}

TEST_CASE("make_iet rejects bad input") {
    auto perm = Permutation::parse("A B / B A");
    CHECK_THROWS_AS(make_iet(perm, std::vector<Rational>{Rational(0), Rational(1)}),
                    NonPositiveLength);
    CHECK_THROWS_AS(make_iet(perm, std::vector<Rational>{Rational(1)}), DimensionMismatch);
    // reducible rejected only in strict mode
    auto red = Permutation::parse("A B / A B");
    std::vector<Rational> half{make_rational(1, 2), make_rational(1, 2)};
    CHECK_NOTHROW(make_iet(red, half));
    CHECK_THROWS_AS(make_iet(red, half, /*strict=*/true), ReduciblePermutation);
}

TEST_CASE("make_iet normalizes to total length one") {
    IET t = make_iet(Permutation::parse("A B / B A"),
                     std::vector<Rational>{Rational(1), Rational(3)});
    CHECK(t.length(0).rational() == make_rational(1, 4));
    CHECK(t.total().rational() == 1);
}

TEST_CASE("apply acts as the rotation by 3/4") {
    IET t = quarter_swap();
    CHECK(t.apply(Scalar(make_rational(1, 10))).rational() == make_rational(17, 20));
    CHECK(t.apply(Scalar(make_rational(1, 2))).rational() == make_rational(1, 4));
    CHECK_THROWS_AS(t.apply(Scalar(Rational(1))), OutOfDomain);
    CHECK_THROWS_AS(t.apply(Scalar(Rational(-1))), OutOfDomain);
}

TEST_CASE("d=4 symmetric reverses the block order") {
    std::vector<Rational> quarters(4, make_rational(1, 4));
    IET t = make_iet(Permutation::symmetric(4), quarters);
    // midpoint of block p maps to the midpoint of block d-1-p
    for (int p = 0; p < 4; ++p) {
        Rational mid = make_rational(2 * p + 1, 8);
        Rational expect = make_rational(2 * (3 - p) + 1, 8);
        CHECK(t.apply(Scalar(mid)).rational() == expect);
    }
}

TEST_CASE("orbit basics") {
    IET t = quarter_swap();
    auto o0 = t.orbit(Scalar(make_rational(1, 10)), 0);
    REQUIRE(o0.points.size() == 1);
    CHECK_FALSE(o0.singular_step.has_value());

    // golden rotation closed form: T^n 0 = n (1 - 1/phi) mod 1
    IET g = rotation_iet(Scalar(Ball::from_long(1, 256)) - fixtures::golden_theta_ball(256));
    auto orb = g.orbit(Scalar(Ball::from_long(0, 256)), 5);
    double inv_phi = (std::sqrt(5.0) - 1) / 2;
    for (int n = 0; n <= 5; ++n) {
        double expect = std::fmod(n * (1 - inv_phi), 1.0);
        CHECK_THAT(orb.points[static_cast<std::size_t>(n)].to_double(),
                   WithinAbs(expect, 1e-12));
    }
}

TEST_CASE("rational orbit is exact, periodic points detected by replay") {
    IET t = quarter_swap();  // rotation by 3/4: period 4
    auto o = t.orbit(Scalar(make_rational(1, 10)), 8);
    CHECK(o.points[0].rational() == o.points[4].rational());
    CHECK(o.points[4].rational() == o.points[8].rational());
    // bit-exact determinism
    auto o2 = t.orbit(Scalar(make_rational(1, 10)), 8);
    for (std::size_t i = 0; i < o.points.size(); ++i)
        CHECK(o.points[i].rational() == o2.points[i].rational());
}

TEST_CASE("orbit reports discontinuity hits") {
    IET t = quarter_swap();
    // 0 -> 3/4 -> 1/2 -> 1/4 (interior breakpoint)
    auto o = t.orbit(Scalar(Rational(0)), 4);
    REQUIRE(o.singular_step.has_value());
    CHECK(*o.singular_step == 3);
    CHECK_THROWS_AS(t.orbit(Scalar(Rational(0)), 4, /*strict=*/true), SingularOrbit);
}

TEST_CASE("birkhoff sums") {
    IET g = fixtures::golden_rational(40);
    Observable one = Observable::constant(Rational(1));
    CHECK_THAT(g.birkhoff_sum(one, Scalar(make_rational(1, 7)), 100), WithinAbs(100.0, 1e-12));

    // Denjoy-Koksma band: indicator of [0,1/2), 100 iterates within Var log N of N/2
    Observable half = Observable::indicator(Rational(0), make_rational(1, 2));
    double s = g.birkhoff_sum(half, Scalar(make_rational(1, 7)), 100);
    CHECK(std::abs(s - 50.0) < 2 * 2 * std::log(100.0));

    Observable zero_avg = Observable::indicator(Rational(0), make_rational(1, 2)).centered();
    CHECK(zero_avg.mean_exact() == 0);
    CHECK_THAT(g.birkhoff_sum(zero_avg, Scalar(make_rational(1, 7)), 0), WithinAbs(0.0, 0.0));
}

TEST_CASE("twisted birkhoff sums") {
    IET g = fixtures::golden_rational(40);
    Observable f = Observable::indicator(Rational(0), make_rational(1, 2));
    Scalar x(make_rational(1, 7));

    // theta = 0 reduces to the plain sum
    auto tw0 = g.twisted_birkhoff_sum(f, x, 0.0, 64);
    CHECK_THAT(tw0.real(), WithinAbs(g.birkhoff_sum(f, x, 64), 1e-9));
    CHECK_THAT(tw0.imag(), WithinAbs(0.0, 1e-12));

    // f == 1: geometric sum in closed form
    Observable one = Observable::constant(Rational(1));
    double theta = 0.3;
    std::size_t N = 50;
    auto tw = g.twisted_birkhoff_sum(one, x, theta, N);
    std::complex<double> q = std::exp(std::complex<double>(0, 2 * std::numbers::pi * theta));
    std::complex<double> expect = (std::pow(q, static_cast<double>(N)) - 1.0) / (q - 1.0);
    CHECK_THAT(std::abs(tw - expect), WithinAbs(0.0, 1e-10));

    // term-by-term oracle for f = e^{2 pi i x} at theta = 1/2
    CxObservable e = CxObservable::exp2pix();
    auto got = g.twisted_birkhoff_sum(e, Scalar(Rational(0)), 0.5, 50);
    std::complex<double> want(0, 0);
    auto orb = g.orbit(Scalar(Rational(0)), 50);
    for (std::size_t n = 0; n < 50; ++n) {
        double pt = orb.points[n].to_double();
        want += std::exp(std::complex<double>(0, std::numbers::pi * static_cast<double>(n))) *
                std::exp(std::complex<double>(0, 2 * std::numbers::pi * pt));
    }
    CHECK_THAT(std::abs(got - want), WithinAbs(0.0, 1e-10));
}

TEST_CASE("piecewise isometry and measure preservation", "[property]") {
    std::mt19937_64 rng(7);
    for (int iter = 0; iter < 20; ++iter) {
        auto lens = fixtures::random_lengths(4, rng());
        IET t = make_iet(Permutation::symmetric(4), lens);
        // images of the top partition tile [0,1): translations of consecutive
        // bottom blocks line up exactly
        Rational acc(0);
        for (std::size_t p = 0; p < 4; ++p) {
            std::size_t lab = t.perm().bottom_at(p);
            Rational img_left =
                t.top_left(t.perm().top_pos(lab)).rational() + t.translation(lab).rational();
            CHECK(img_left == acc);
            acc += t.length(lab).rational();
        }
        CHECK(acc == 1);
        // same-interval pairs preserve distance
        for (std::size_t p = 0; p < 4; ++p) {
            Rational lo = t.top_left(p).rational();
            Rational w = t.length(t.perm().top_at(p)).rational();
            Scalar x(lo + w / 7), y(lo + w / 3);
            Rational dx = t.apply(y).rational() - t.apply(x).rational();
            CHECK(dx == y.rational() - x.rational());
        }
    }
}

TEST_CASE("twisted sum modulus bound |S| <= N sup|f|", "[property]") {
    std::mt19937_64 rng(99);
    IET g = fixtures::golden_rational(35);
    Observable f = Observable::bump(make_rational(1, 5), make_rational(1, 4));
    for (int iter = 0; iter < 25; ++iter) {
        double theta = static_cast<double>(rng() % 1000) / 1000.0;
        std::size_t n = 1 + rng() % 200;
        auto s = g.twisted_birkhoff_sum(f, Scalar(make_rational(1, 9)), theta, n);
        CHECK(std::abs(s) <= static_cast<double>(n) * f.sup_norm() + 1e-9);
    }
}
