#pragma once

#include <cmath>
#include <limits>

#include "ietlab/errors.hpp"

namespace ietlab {

// gamma = min{ eps/16, -eps log(1 - c1' eps^2) / (8 theta1) }
inline double qvc_gamma(double eps, double c1_prime, double theta1) {
    if (!(eps > 0 && eps < 1) || !(c1_prime > 0) || !(theta1 > 0))
        throw OutOfDomain("qvc_gamma needs eps in (0,1), c1' > 0, theta1 > 0");
    double branch1 = eps / 16.0;
    double branch2 = -eps * std::log1p(-c1_prime * eps * eps) / (8.0 * theta1);
    return std::min(branch1, branch2);
}

// Exponent bookkeeping for the polynomial-decay pipeline:
//   eta = gamma / (alpha + beta),  alpha' = alpha gamma / (alpha + beta).
struct ExponentBundle {
    double eps, c1_prime, theta1;
    double alpha, beta;
    double gamma, eta, alpha_prime;
};

inline ExponentBundle exponent_bundle(double eps, double c1_prime, double theta1, double alpha,
                                      double beta) {
    if (!(alpha > 0) || !(beta > 0)) throw OutOfDomain("exponent_bundle needs alpha, beta > 0");
    ExponentBundle b;
    b.eps = eps;
    b.c1_prime = c1_prime;
    b.theta1 = theta1;
    b.alpha = alpha;
    b.beta = beta;
    b.gamma = qvc_gamma(eps, c1_prime, theta1);
    b.eta = b.gamma / (alpha + beta);
    b.alpha_prime = alpha * b.gamma / (alpha + beta);
    return b;
}

struct RotationRate {
    double u = 0;
    double eps = 0;                 // 1/u
    double predicted_exponent = 0;  // M / u^2 (rate of N^{-M/u^2})
    double n_power = 0;             // N^{-M/u^2}
    double log_bound = 0;           // (log N)^{-1/6}
};

// Solve u^2 (log u - log log u - (1+delta) log log log u) / M = log N on the
// increasing branch, and check the sandwich N^{-M/u^2} < (log N)^{-1/6}.
// Below the function's minimum there is no solution: that is a domain error,
// not a guess.
inline RotationRate rotation_class_rate(double m_const, double delta, double n_value) {
    if (!(m_const > 0) || !(delta > 0)) throw OutOfDomain("need M > 0, delta > 0");
    if (!(n_value > 16)) throw TooSmallN("N too small for the u-equation");
    const double log_n = std::log(n_value);
    auto f = [&](double u) {
        double lu = std::log(u), llu = std::log(lu), lllu = std::log(llu);
        return u * u * (lu - llu - (1 + delta) * lllu) / m_const;
    };
    // locate the minimum of f on (e, inf) by coarse scan + golden refinement
    double lo = std::exp(1.0) + 1e-6, hi = lo;
    double best_u = lo, best_f = f(lo);
    for (double u = lo; u < 1e6; u *= 1.05) {
        double v = f(u);
        if (v < best_f) {
            best_f = v;
            best_u = u;
        }
        hi = u;
    }
    if (log_n < best_f)
        throw TooSmallN("log N below the minimum of the u-equation; no valid u exists");
    // increasing branch: bisect on [best_u, hi] (extend hi until f(hi) >= log N)
    double a = best_u, b = hi;
    while (f(b) < log_n) {
        b *= 2;
        if (b > 1e300) throw NumericError("u-equation bisection diverged");
    }
    for (int i = 0; i < 200; ++i) {
        double mid = (a + b) / 2;
        if (f(mid) < log_n)
            a = mid;
        else
            b = mid;
        if (b - a < 1e-9 * std::max(1.0, a)) break;
    }
    RotationRate r;
    r.u = (a + b) / 2;
    r.eps = 1.0 / r.u;
    r.predicted_exponent = m_const / (r.u * r.u);
    r.n_power = std::pow(n_value, -r.predicted_exponent);
    r.log_bound = std::pow(log_n, -1.0 / 6.0);
    if (!(r.n_power < r.log_bound))
        throw NumericError("u-equation solution fails the sandwich N^{-M/u^2} < (log N)^{-1/6}");
    return r;
}

}  // namespace ietlab
