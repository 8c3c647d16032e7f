#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <numbers>

#include "ietlab/lyapunov.hpp"

using namespace ietlab;

TEST_CASE("d=2: theta1 positive, theta2 slot empty, small stderr") {
    auto est = lyapunov_estimate(Permutation::parse("A B / B A"), 2025, 100000, 6);
    CHECK_FALSE(est.theta2_defined);  // 2g = 2: only +-theta1
    CHECK(est.theta1 > 0);
    CHECK(est.stderr1 < 0.05 * est.theta1);
    // known value of the top exponent per Zorich step for d=2:
    // pi^2 / (12 log 2), the Levy constant of continued fractions
    double levy = std::numbers::pi * std::numbers::pi / (12 * std::log(2.0));
    CHECK(std::abs(est.theta1 - levy) < 0.1 * levy);
    CHECK(est.theta1_per_log_norm > 0);
}

TEST_CASE("d=4 symmetric: two positive exponents with a clear gap") {
    auto est = lyapunov_estimate(Permutation::symmetric(4), 99, 20000, 6);
    REQUIRE(est.theta2_defined);
    CHECK(est.theta1 > 0);
    CHECK(est.theta2 > 0);
    CHECK(est.theta1 > est.theta2);
    CHECK(est.theta1 - est.theta2 > 3 * (est.stderr1 + est.stderr2));
}

TEST_CASE("single sample yields a flagged infinite stderr") {
    auto est = lyapunov_estimate(Permutation::parse("A B / B A"), 7, 1, 1);
    CHECK(std::isinf(est.stderr1));
    CHECK(est.n_samples == 1);
}
