#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "fixtures.hpp"
#include "ietlab/lowerbound.hpp"
#include "ietlab/rotation_rep.hpp"

using namespace ietlab;
using Catch::Matchers::WithinAbs;

namespace {

// Ambient 3-IET whose induction reaches a rotation vertex with rotation
// number F(k)/F(k+1): inverse induction from Fibonacci lengths at the vertex.
IET golden_flow_ambient(unsigned long k = 35) {
    RauzyPath gamma = path_to_rotation(Permutation::symmetric(3));
    std::vector<Rational> induced{Rational(fibonacci(k - 3)), Rational(fibonacci(k - 2)),
                                  Rational(fibonacci(k))};
    return ambient_from_induced(gamma, induced);
}

RotationRepresentation golden_flow_rep(unsigned long k = 35) {
    return rotation_representation(golden_flow_ambient(k));
}

}  // namespace

TEST_CASE("a 2-IET is its own degenerate representation") {
    IET r = rotation_iet(Scalar(make_rational(2, 5)));
    RotationRepresentation rep = rotation_representation(r);
    CHECK(rep.degenerate_full_base);  // base of length 1: flagged boundary case
    CHECK(rep.base_len == 1);
    REQUIRE(rep.roof.size() == 1);
    CHECK(rep.roof[0].height == 1);
    CHECK(rep.theta == make_rational(2, 5));
    CHECK(rep.roof_integral() == 1);
}

TEST_CASE("golden ambient fixture represents the prescribed rotation exactly") {
    unsigned long k = 35;
    RotationRepresentation rep = golden_flow_rep(k);
    CHECK_FALSE(rep.degenerate_full_base);
    CHECK(rep.roof_integral() == 1);  // Kac identity, exact
    Rational theta(fibonacci(k), fibonacci(k + 1));
    theta.canonicalize();
    CHECK(rep.theta == theta);  // the induced rotation number, bit-exact
    CHECK(rep.var >= 2);        // non-constant roof
    // special flow at integer times reproduces the ambient IET exactly
    CHECK(verify_rotation_representation(rep, 1000, 99));
}

TEST_CASE("d=3 reversal fixture has an exact rotation representation") {
    IET t = fixtures::random_rational_iet(fixtures::d3_reversal(), 2024, 24);
    RotationRepresentation rep = rotation_representation(t);
    CHECK(rep.roof_integral() == 1);
    Rational sum(0);
    for (const auto& rp : rep.roof) sum += (rp.hi - rp.lo) * Rational(rp.height);
    CHECK(sum == 1);
    CHECK(verify_rotation_representation(rep, 200, 5));
}

TEST_CASE("non-rotation-class input is rejected") {
    IET t = fixtures::random_rational_iet(Permutation::symmetric(4), 7, 30);
    CHECK_THROWS_AS(rotation_representation(t), NotRotationClass);
}

TEST_CASE("denjoy-koksma: constant roof has zero deviations") {
    IET r = rotation_iet(Scalar(make_rational(2, 5)));
    RotationRepresentation rep = rotation_representation(r);
    DKReport report = denjoy_koksma_check(rep, {4, 16, 64}, 0.1);
    CHECK(report.var == 0);
    CHECK(report.c_eps == 0.0);
    for (const auto& row : report.rows) CHECK(row.deviation == 0.0);
}

TEST_CASE("denjoy-koksma on the golden flow: logarithmic deviations") {
    RotationRepresentation rep = golden_flow_rep();
    std::vector<std::size_t> grid{8, 32, 128, 512, 2048, 8192};
    DKReport r1 = denjoy_koksma_check(rep, grid, 0.1, 16, 1);
    CHECK(r1.c_eps > 0);
    CHECK(r1.c_eps < 3.0);  // deviations stay O(log k) for golden-like theta
    DKReport r2 = denjoy_koksma_check(rep, grid, 0.1, 16, 999);
    CHECK(std::abs(r1.c_eps - r2.c_eps) <= 0.2 * std::max(r1.c_eps, r2.c_eps));
}

TEST_CASE("liouville-like rotation number spikes the deviation") {
    // theta with continued fraction [0; 3, 40000, 2]: a huge digit
    Rational theta = 1 / (3 + 1 / (Rational(40000) + make_rational(1, 2)));
    theta.canonicalize();
    RauzyPath gamma = path_to_rotation(Permutation::symmetric(3));
    // induced lengths (x, y, z) at the rotation vertex with z/(x+y+z) = theta
    Int p = theta.get_num(), q = theta.get_den();
    std::vector<Rational> induced{Rational(q - p - 1), Rational(1), Rational(p)};
    RotationRepresentation rep = rotation_representation(ambient_from_induced(gamma, induced));
    CHECK(rep.theta == theta);
    DKReport report = denjoy_koksma_check(rep, {8, 64, 512, 4096, 16384}, 0.1, 8, 3);
    RotationRepresentation golden = golden_flow_rep();
    DKReport golden_report = denjoy_koksma_check(golden, {8, 64, 512, 4096, 16384}, 0.1, 8, 3);
    CHECK(report.c_eps > 3 * golden_report.c_eps);  // the spike
    CHECK(std::isfinite(report.c_eps));             // but still a finite constant on the grid
}

TEST_CASE("lower bound certificate at N = 2^12") {
    RotationRepresentation rep = golden_flow_rep();
    LowerBoundCertificate cert = lower_bound_construct(rep, 1 << 12);
    INFO("S size " << cert.s_set.size() << " s = " << rational_to_string(cert.s)
                   << " ratio = " << cert.ratio);
    CHECK(cert.certified);
    CHECK(cert.disjoint_verified);
    CHECK(cert.core_zero_verified);
    CHECK(cert.cardinality_ok);
    CHECK(cert.lip_ok);
    CHECK(cert.l1_product_ok);
    CHECK(cert.ratio >= 1.0);
    CHECK_FALSE(cert.s_set.empty());
    // json serialization carries the full certificate
    auto j = cert.to_json();
    CHECK(j["certified"].get<bool>());
    CHECK(j["S"].size() == cert.s_set.size());
}

TEST_CASE("lower bound guards reject tiny N") {
    RotationRepresentation rep = golden_flow_rep();
    CHECK_THROWS_AS(lower_bound_construct(rep, 2), TooSmallN);
    bool guarded = false;
    try {
        lower_bound_construct(rep, 3);
    } catch (const TooSmallN&) {
        guarded = true;
    } catch (const NoGapFound&) {
        guarded = true;
    }
    CHECK(guarded);
}
