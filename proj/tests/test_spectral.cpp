#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "fixtures.hpp"
#include "ietlab/spectral.hpp"

using namespace ietlab;
using Catch::Matchers::WithinAbs;

TEST_CASE("fejer kernel at xi -> 0 tends to R^2") {
    CHECK_THAT(fejer_kernel(3.0, 0.0), WithinAbs(9.0, 1e-12));
    CHECK_THAT(fejer_kernel(5.0, 1e-12), WithinAbs(25.0, 1e-6));
}

TEST_CASE("fejer kernel identity vs adaptive quadrature") {
    // integral over [-R,R] of (R-|l|) e^{2 pi i l xi} dl reduces to
    // 2 int_0^R (R-l) cos(2 pi l xi) dl by symmetry
    std::mt19937_64 rng(8);
    for (int iter = 0; iter < 20; ++iter) {
        double r_horizon = 0.5 + static_cast<double>(rng() % 500) / 100.0;
        double xi = 0.05 + static_cast<double>(rng() % 300) / 100.0;
        auto integrand = [&](double l) {
            return 2 * (r_horizon - l) * std::cos(2 * std::numbers::pi * l * xi);
        };
        double quad = adaptive_simpson(integrand, 0.0, r_horizon, 1e-12);
        CHECK_THAT(fejer_kernel(r_horizon, xi), WithinAbs(quad, 1e-9));
    }
    // the spec's spot check
    auto integrand = [&](double l) { return 2 * (3.0 - l) * std::cos(2 * std::numbers::pi * l * 0.2); };
    CHECK_THAT(fejer_kernel(3.0, 0.2), WithinAbs(adaptive_simpson(integrand, 0.0, 3.0, 1e-12), 1e-9));
}

TEST_CASE("fejer mass bound arithmetic") {
    // alpha = 1/2, C1 = 1, r = 1e-2: pi^2 2^{-1} 1e-2
    CHECK_THAT(fejer_mass_bound(1.0, 0.5, 1.0, 1e-2),
               WithinAbs(std::numbers::pi * std::numbers::pi / 2 * 1e-2, 1e-12));
    CHECK_THAT(fejer_mass_bound(1.0, 0.5, 1.0, 1e-2), WithinAbs(0.049348, 1e-6));
    CHECK_THROWS_AS(fejer_mass_bound(1.0, 1.5, 1.0, 1e-3), OutOfDomain);
    CHECK_THROWS_AS(fejer_mass_bound(1.0, 0.5, 10.0, 0.5), OutOfDomain);
}

TEST_CASE("constant observable concentrates all spectral mass at 0") {
    IET g = fixtures::golden_rational(40);
    Observable one = Observable::constant(Rational(1));
    auto est = empirical_spectral_mass(g, one, 0.0, 1.0 / 512.0, 256, 16, 7);
    CHECK_THAT(est.estimate, WithinAbs(1.0, 0.02));  // recovers ||f||_2^2 = 1
    CHECK(est.estimate <= est.certified_upper);
}

TEST_CASE("rotation eigenvalue: mass concentrates at the rotation number") {
    IET g = fixtures::golden_rational(40);
    double theta = g.length(1).to_double();  // rotation number
    CxObservable e = CxObservable::exp2pix();
    auto at_eigen = empirical_spectral_mass(g, e, theta, 1.0 / 512.0, 256, 16, 11);
    CHECK(at_eigen.estimate > 0.9);  // pure point spectrum: near total mass
    auto off_eigen = empirical_spectral_mass(g, e, std::fmod(theta + 0.31, 1.0), 1.0 / 512.0, 256, 16, 11);
    CHECK(off_eigen.estimate < 0.05);
    CHECK(at_eigen.estimate <= at_eigen.certified_upper);
}

TEST_CASE("estimates never exceed their certified upper bounds", "[property]") {
    IET g = fixtures::golden_rational(35);
    Observable f = Observable::bump(make_rational(1, 5), make_rational(1, 4)).centered();
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 10; ++iter) {
        double om = static_cast<double>(rng() % 997) / 997.0;
        auto est = empirical_spectral_mass(g, f, om, 1.0 / 256.0, 128, 8, rng());
        CHECK(est.estimate <= est.certified_upper);
    }
}

TEST_CASE("partition of frequencies accounts for at most the full L2 mass") {
    IET g = fixtures::golden_rational(40);
    Observable f = Observable::bump(make_rational(1, 5), make_rational(1, 4));
    std::size_t n = 64;
    double total = 0;
    for (std::size_t k = 0; k < n; ++k) {
        auto est = empirical_spectral_mass(g, f, static_cast<double>(k) / static_cast<double>(n),
                                           1.0 / (2.0 * static_cast<double>(n)), n, 24, 1234 + k);
        total += est.estimate;
    }
    double l2 = f.l2_norm_sq();
    CHECK(total <= l2 * 1.05);
    CHECK(total >= l2 * 0.8);  // and the partition does capture most of it
}
