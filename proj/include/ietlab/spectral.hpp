#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "ietlab/iet.hpp"
#include "ietlab/observable.hpp"
#include "ietlab/quadrature.hpp"

namespace ietlab {

// Fejer kernel value: integral over [-R, R] of (R - |l|) e^{2 pi i l xi} dl
// = (sin(pi R xi) / (pi xi))^2, with the xi -> 0 limit R^2.
inline double fejer_kernel(double r_horizon, double xi) {
    double den = std::numbers::pi * xi;
    if (std::abs(den) < 1e-9) {
        // series: R^2 (1 - (pi R xi)^2 / 3 + ...)
        double t = std::numbers::pi * r_horizon * xi;
        return r_horizon * r_horizon * (1 - t * t / 3);
    }
    double s = std::sin(std::numbers::pi * r_horizon * xi) / den;
    return s * s;
}

// sigma_f([omega - r, omega + r]) <= pi^2 2^{-2 alpha} C1^2 r^{2(1-alpha)},
// valid for r <= 1/(2 R0) given ||S_R|| <= C1 R^alpha for R >= R0.
inline double fejer_mass_bound(double c1, double alpha, double r0, double r) {
    if (!(alpha > 0 && alpha < 1)) throw OutOfDomain("fejer_mass_bound needs alpha in (0,1)");
    if (r > 1.0 / (2 * r0)) throw OutOfDomain("fejer_mass_bound needs r <= 1/(2 R0)");
    return std::numbers::pi * std::numbers::pi * std::pow(2.0, -2 * alpha) * c1 * c1 *
           std::pow(r, 2 * (1 - alpha));
}

struct SpectralEstimate {
    double omega = 0;
    double r = 0;
    std::size_t n_horizon = 0;
    std::size_t n_points = 0;
    std::uint64_t seed = 0;
    double mean_square = 0;      // E_x |sum_{n<N} e^{-2 pi i n omega} f(T^n x)|^2
    double estimate = 0;         // local mass estimate G / N^2
    double certified_upper = 0;  // (pi^2/4) G / N^2, kernel lower bound on [omega-r, omega+r]
};

// Monte Carlo estimate of the spectral measure's mass near omega from twisted
// Birkhoff sums at horizon N.  The kernel bound needs r <= 1/(2N).
inline SpectralEstimate empirical_spectral_mass(const IET& iet, const Observable& f, double omega,
                                                double r, std::size_t n_horizon,
                                                std::size_t n_points = 64,
                                                std::uint64_t seed = 1) {
    if (r > 1.0 / (2.0 * static_cast<double>(n_horizon)) + 1e-15)
        throw OutOfDomain("empirical_spectral_mass needs r <= 1/(2N)");
    SpectralEstimate est;
    est.omega = omega;
    est.r = r;
    est.n_horizon = n_horizon;
    est.n_points = n_points;
    est.seed = seed;
    std::mt19937_64 rng(seed);
    const std::complex<double> rot =
        std::exp(std::complex<double>(0, -2 * std::numbers::pi * omega));
    double acc = 0;
    for (std::size_t p = 0; p < n_points; ++p) {
        Rational x0(static_cast<long>(rng() % 1000000007ull), 1000000007L);
        Scalar x(x0);
        std::complex<double> phase(1, 0), s(0, 0);
        Scalar cur = x;
        for (std::size_t n = 0; n < n_horizon; ++n) {
            s += phase * f.eval(cur.to_double());
            phase *= rot;
            cur = iet.apply(cur);
        }
        acc += std::norm(s);
    }
    est.mean_square = acc / static_cast<double>(n_points);
    double n2 = static_cast<double>(n_horizon) * static_cast<double>(n_horizon);
    est.estimate = est.mean_square / n2;
    est.certified_upper = (std::numbers::pi * std::numbers::pi / 4.0) * est.mean_square / n2;
    return est;
}

inline SpectralEstimate empirical_spectral_mass(const IET& iet, const CxObservable& f,
                                                double omega, double r, std::size_t n_horizon,
                                                std::size_t n_points = 64,
                                                std::uint64_t seed = 1) {
    if (r > 1.0 / (2.0 * static_cast<double>(n_horizon)) + 1e-15)
        throw OutOfDomain("empirical_spectral_mass needs r <= 1/(2N)");
    SpectralEstimate est;
    est.omega = omega;
    est.r = r;
    est.n_horizon = n_horizon;
    est.n_points = n_points;
    est.seed = seed;
    std::mt19937_64 rng(seed);
    const std::complex<double> rot =
        std::exp(std::complex<double>(0, -2 * std::numbers::pi * omega));
    double acc = 0;
    for (std::size_t p = 0; p < n_points; ++p) {
        Rational x0(static_cast<long>(rng() % 1000000007ull), 1000000007L);
        std::complex<double> phase(1, 0), s(0, 0);
        Scalar cur{x0};
        for (std::size_t n = 0; n < n_horizon; ++n) {
            s += phase * f.eval(cur.to_double());
            phase *= rot;
            cur = iet.apply(cur);
        }
        acc += std::norm(s);
    }
    est.mean_square = acc / static_cast<double>(n_points);
    double n2 = static_cast<double>(n_horizon) * static_cast<double>(n_horizon);
    est.estimate = est.mean_square / n2;
    est.certified_upper = (std::numbers::pi * std::numbers::pi / 4.0) * est.mean_square / n2;
    return est;
}

}  // namespace ietlab
