#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ietlab/grid.hpp"
#include "ietlab/iet.hpp"
#include "ietlab/observable.hpp"
#include "ietlab/quadrature.hpp"

namespace ietlab {

// ---------------------------------------------------------------------------
// Exact correlation engine.
//
// corr_n = <f o T^n, g> - int f int g, computed by substituting z = T^n y:
// corr_n = int F(z) G(T^{-n} z) dz - int F int G.  The engine tracks the
// pullback h_n = T^{-n} restricted to the support of F as a list of exact
// intervals (all endpoints are multiples of 1/q for a common denominator q),
// so support disjointness is decided exactly and only overlapping pieces are
// integrated.  Coordinates run on int64 when q fits, otherwise on mpz.
// ---------------------------------------------------------------------------

struct CorrelationSeries {
    std::vector<double> corr;      // corr_0 .. corr_{N-1}
    std::vector<bool> core_zero;   // T^{-n}(supp F) does not meet supp G (exact)
    Rational f_mean, g_mean;       // exact means (including offsets) when linear
    std::size_t peak_pieces = 0;   // tracker size high-water mark
};

struct CorrOptions {
    std::size_t piece_budget = 2'000'000;  // QuadratureBlowup beyond this
    double quad_tol = 1e-12;               // adaptive tolerance for generic pieces
};

namespace corr_detail {

// common denominator of the IET data and both observables' breakpoints
inline Int common_denominator(const IET& iet, const Observable& f, const Observable& g) {
    Int q = iet_denominator(iet);
    for (const auto& pc : f.pieces()) q = lcm_int(q, Int(pc.lo.get_den()));
    for (const auto& pc : g.pieces()) q = lcm_int(q, Int(pc.lo.get_den()));
    return q;
}

inline double eval_linear(const Piece& pc, double x) {
    return to_double(pc.v0) + to_double(pc.slope) * (x - to_double(pc.lo));
}

// integral over [a, b] of fa(x) * fb(x + shift), both linear on the range
inline double linear_product_integral(double a, double b, double f_v0, double f_slope,
                                      double f_x0, double g_v0, double g_slope, double g_x0,
                                      double shift) {
    // f(x) = f_v0 + f_slope (x - f_x0); g(x + shift) = g_v0 + g_slope (x + shift - g_x0)
    double p0 = f_v0 - f_slope * f_x0;
    double p1 = f_slope;
    double q0 = g_v0 + g_slope * (shift - g_x0);
    double q1 = g_slope;
    auto prim = [&](double x) {
        double x2 = x * x, x3 = x2 * x;
        return p0 * q0 * x + (p0 * q1 + p1 * q0) * x2 / 2 + p1 * q1 * x3 / 3;
    };
    return prim(b) - prim(a);
}

}  // namespace corr_detail

// Core routine shared by the fast and big-integer paths.
template <class Coord>
CorrelationSeries correlation_series_impl(const IET& iet, const Observable& f,
                                          const Observable& g, std::size_t n_terms,
                                          const Int& q, const CorrOptions& opt) {
    using namespace corr_detail;
    const double qd = mpz_get_d(q.get_mpz_t());
    auto to_coord = [&](const Rational& r) { return rational_to_coord<Coord>(r, q); };
    PiecewiseTracker<Coord> eng = inverse_tracker<Coord>(iet, q);

    // nonzero support hulls
    auto support_hull = [&](const Observable& obs, Rational& lo, Rational& hi) {
        bool found = false;
        for (const auto& pc : obs.pieces()) {
            bool zero = pc.linear && pc.v0 == 0 && pc.slope == 0;
            if (zero) continue;
            if (!found) {
                lo = pc.lo;
                hi = pc.hi;
                found = true;
            } else {
                lo = std::min(lo, pc.lo);
                hi = std::max(hi, pc.hi);
            }
        }
        return found;
    };
    Rational flo, fhi, glo, ghi;
    bool f_nonzero = support_hull(f, flo, fhi);
    bool g_nonzero = support_hull(g, glo, ghi);

    CorrelationSeries out;
    out.f_mean = f.all_linear() ? f.mean_exact() : Rational(f.mean());
    out.g_mean = g.all_linear() ? g.mean_exact() : Rational(g.mean());
    out.corr.assign(n_terms, 0.0);
    out.core_zero.assign(n_terms, true);
    if (!f_nonzero || !g_nonzero) return out;  // a zero observable: all zeros

    // core integrals: int Fp int Gp with the offsets as the constants
    double c_f = to_double(f.offset()), c_g = to_double(g.offset());
    double int_fp = f.mean() - c_f, int_gp = g.mean() - c_g;

    Coord w_lo = to_coord(flo), w_hi = to_coord(fhi);
    Coord g_lo = to_coord(glo), g_hi = to_coord(ghi);
    eng.pieces.push_back({w_lo, w_hi, Coord(0)});

    auto to_dbl = [&](const Coord& c) { return coord_to_double<Coord>(c, qd); };

    // per-piece breakpoints of f (z-space) and g (y-space) in grid units
    std::vector<Coord> f_breaks, g_breaks;
    std::vector<const Piece*> f_cells, g_cells;
    for (const auto& pc : f.pieces()) {
        f_breaks.push_back(to_coord(pc.lo));
        f_cells.push_back(&pc);
    }
    f_breaks.push_back(to_coord(Rational(1)));
    for (const auto& pc : g.pieces()) {
        g_breaks.push_back(to_coord(pc.lo));
        g_cells.push_back(&pc);
    }
    g_breaks.push_back(to_coord(Rational(1)));

    auto cell_of = [](const std::vector<Coord>& breaks, const Coord& x) {
        // largest i with breaks[i] <= x (breaks sorted, breaks[0] = 0)
        return static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), x) -
                                        breaks.begin()) -
               1;
    };

    for (std::size_t n = 0; n < n_terms; ++n) {
        double raw = 0;
        bool any_overlap = false;
        for (const auto& p : eng.pieces) {
            // does the image [lo+off, hi+off) meet supp(G)?
            if (!(p.lo + p.off < g_hi && p.hi + p.off > g_lo)) continue;
            Coord g_lo_shift = g_lo - p.off, g_hi_shift = g_hi - p.off;
            Coord zlo = std::max(p.lo, g_lo_shift);
            Coord zhi = std::min(p.hi, g_hi_shift);
            if (!(zlo < zhi)) continue;
            any_overlap = true;
            // subdivide [zlo, zhi) at breakpoints of F (z) and G (z + off)
            Coord z = zlo;
            while (z < zhi) {
                std::size_t fc = cell_of(f_breaks, z);
                std::size_t gc = cell_of(g_breaks, z + p.off);
                Coord g_cell_end = g_breaks[gc + 1] - p.off;
                Coord next = std::min({zhi, f_breaks[fc + 1], g_cell_end});
                const Piece& fp = *f_cells[fc];
                const Piece& gp = *g_cells[gc];
                double za = to_dbl(z), zb = to_dbl(next);
                double shift = to_dbl(p.off);
                bool f_zero = fp.linear && fp.v0 == 0 && fp.slope == 0;
                bool g_zero = gp.linear && gp.v0 == 0 && gp.slope == 0;
                if (!f_zero && !g_zero) {
                    if (fp.linear && gp.linear) {
                        raw += linear_product_integral(
                            za, zb, to_double(fp.v0), to_double(fp.slope), to_double(fp.lo),
                            to_double(gp.v0), to_double(gp.slope), to_double(gp.lo), shift);
                    } else {
                        auto prod = [&](double x) {
                            double fv = fp.linear ? eval_linear(fp, x) : fp.fn(x);
                            double gv =
                                gp.linear ? eval_linear(gp, x + shift) : gp.fn(x + shift);
                            return fv * gv;
                        };
                        raw += adaptive_simpson(prod, za, zb, opt.quad_tol);
                    }
                }
                z = next;
            }
        }
        out.corr[n] = raw - int_fp * int_gp;
        out.core_zero[n] = !any_overlap;
        out.peak_pieces = std::max(out.peak_pieces, eng.pieces.size());
        if (eng.pieces.size() > opt.piece_budget)
            throw QuadratureBlowup("pullback piece budget exceeded");
        if (n + 1 < n_terms) eng.step();
    }
    return out;
}

inline CorrelationSeries correlation_series(const IET& iet, const Observable& f,
                                            const Observable& g, std::size_t n_terms,
                                            CorrOptions opt = CorrOptions()) {
    if (!iet.rational_mode())
        throw ConfigError("correlation engine requires exact rational mode");
    Int q = corr_detail::common_denominator(iet, f, g);
    if (mpz_sizeinbase(q.get_mpz_t(), 2) <= 62)
        return correlation_series_impl<std::int64_t>(iet, f, g, n_terms, q, opt);
    return correlation_series_impl<Int>(iet, f, g, n_terms, q, opt);
}

// ---------------------------------------------------------------------------
// Cesaro decay series and model fitting
// ---------------------------------------------------------------------------

struct DecaySeries {
    std::vector<std::size_t> n_grid;
    std::vector<double> c_vals;  // C_N = (1/N) sum |corr_n|
    std::vector<double> q_vals;  // Q_N = sum corr_n^2
    std::string iet_id;
    std::uint64_t seed = 0;
};

inline DecaySeries cesaro_decay(const IET& iet, const Observable& f, const Observable& g,
                                const std::vector<std::size_t>& n_grid,
                                CorrOptions opt = CorrOptions()) {
    if (n_grid.empty()) throw ConfigError("empty N grid");
    std::size_t n_max = *std::max_element(n_grid.begin(), n_grid.end());
    Observable fc = f.centered();  // exact zero-average enforcement
    CorrelationSeries cs = correlation_series(iet, fc, g, n_max, opt);
    DecaySeries out;
    out.n_grid = n_grid;
    double abs_acc = 0, sq_acc = 0;
    std::vector<double> c_by_n(n_max + 1, 0.0), q_by_n(n_max + 1, 0.0);
    for (std::size_t n = 0; n < n_max; ++n) {
        abs_acc += std::abs(cs.corr[n]);
        sq_acc += cs.corr[n] * cs.corr[n];
        c_by_n[n + 1] = abs_acc / static_cast<double>(n + 1);
        q_by_n[n + 1] = sq_acc;
    }
    for (std::size_t n : n_grid) {
        if (n > n_max) throw ConfigError("grid point beyond computed horizon");
        out.c_vals.push_back(c_by_n[n]);
        out.q_vals.push_back(q_by_n[n]);
    }
    return out;
}

enum class DecayModel { PowerLaw, LogPower };

struct FitResult {
    DecayModel model;
    double exponent = 0;  // C_N ~ N^{-e} or (log N)^{-e}
    double residual = 0;  // rms residual of the least-squares fit in log scale
};

inline FitResult fit_decay(const DecaySeries& series, DecayModel model) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < series.n_grid.size(); ++i) {
        double n = static_cast<double>(series.n_grid[i]);
        double c = series.c_vals[i];
        if (!(c > 0) || n < 3) continue;
        xs.push_back(model == DecayModel::PowerLaw ? std::log(n) : std::log(std::log(n)));
        ys.push_back(std::log(c));
    }
    FitResult r;
    r.model = model;
    if (xs.size() < 2) {
        r.exponent = 0;
        r.residual = 0;
        return r;
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t m = xs.size();
    for (std::size_t i = 0; i < m; ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = m * sxx - sx * sx;
    double slope = (m * sxy - sx * sy) / denom;
    double icept = (sy - slope * sx) / m;
    double ss = 0;
    for (std::size_t i = 0; i < m; ++i) {
        double e = ys[i] - (icept + slope * xs[i]);
        ss += e * e;
    }
    r.exponent = -slope;
    r.residual = std::sqrt(ss / m);
    return r;
}

inline FitResult preferred_fit(const DecaySeries& series) {
    FitResult p = fit_decay(series, DecayModel::PowerLaw);
    FitResult l = fit_decay(series, DecayModel::LogPower);
    return p.residual <= l.residual ? p : l;
}

}  // namespace ietlab
