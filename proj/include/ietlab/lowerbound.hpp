#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include <json.hpp>

#include "ietlab/correlate.hpp"
#include "ietlab/rotation_rep.hpp"

namespace ietlab {

// Certificate for the logarithmic lower bound on Q_N: bump observables f on
// J_N and g on J_N'' with the forward images of J_N avoiding J_N'' along the
// index set S, so that |<g o T^n, f> - int g int f| = int f int g exactly for
// every n in S.
struct LowerBoundCertificate {
    std::size_t n_horizon = 0;  // N
    double eps = 0;             // the (log log N)^{1+eps} exponent parameter
    double c_eps = 0;           // measured Denjoy-Koksma constant
    double a_const = 0;         // A = 2 a C + 1
    double c0 = 0;              // 1/(30 A) unless overridden
    Rational s;                 // bump scale, snapped to the coordinate grid
    Rational j_lo;              // J_N = [s, 2s)
    Rational jpp_lo;            // J_N'' = [jpp_lo, jpp_lo + s)
    std::vector<std::size_t> s_set;
    Rational f_l1, g_l1;        // exact L1 norms of the bumps
    double f_lip_norm = 0, g_lip_norm = 0;
    double q_n = 0;             // measured Q_N
    Rational exact_core;        // #S (int f int g)^2
    double ratio = 0;           // Q_N / (||f||_1^2 ||g||_1^2 #S)
    double j_cover_len = 0;     // measured |H_N(J_N')|
    bool disjoint_verified = false;
    bool core_zero_verified = false;
    bool cardinality_ok = false;
    bool l1_product_ok = false;
    bool lip_ok = false;
    bool certified = false;

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["N"] = n_horizon;
        j["eps"] = eps;
        j["c_eps"] = c_eps;
        j["A"] = a_const;
        j["c0"] = c0;
        j["s"] = rational_to_string(s);
        j["J_lo"] = rational_to_string(j_lo);
        j["Jpp_lo"] = rational_to_string(jpp_lo);
        j["S"] = s_set;
        j["f_l1"] = rational_to_string(f_l1);
        j["g_l1"] = rational_to_string(g_l1);
        j["f_lip_norm"] = f_lip_norm;
        j["g_lip_norm"] = g_lip_norm;
        j["Q_N"] = q_n;
        j["ratio"] = ratio;
        j["H_cover_length"] = j_cover_len;
        j["disjoint_verified"] = disjoint_verified;
        j["core_zero_verified"] = core_zero_verified;
        j["cardinality_ok"] = cardinality_ok;
        j["l1_product_ok"] = l1_product_ok;
        j["lip_ok"] = lip_ok;
        j["certified"] = certified;
        return j;
    }
};

namespace lb_detail {

// exact forward-image disjointness: J'' meets no T^m(J) for m in S
template <class Coord>
bool forward_images_avoid(const IET& iet, const Int& q, const Rational& j_lo, const Rational& s,
                          const Rational& jpp_lo, const std::vector<std::size_t>& s_set) {
    if (s_set.empty()) return true;
    PiecewiseTracker<Coord> fwd = forward_tracker<Coord>(iet, q);
    Coord lo = rational_to_coord<Coord>(j_lo, q);
    Coord hi = rational_to_coord<Coord>(j_lo + s, q);
    Coord t_lo = rational_to_coord<Coord>(jpp_lo, q);
    Coord t_hi = rational_to_coord<Coord>(jpp_lo + s, q);
    fwd.pieces.push_back({lo, hi, Coord(0)});
    std::size_t m_max = *std::max_element(s_set.begin(), s_set.end());
    std::vector<bool> in_s(m_max + 1, false);
    for (std::size_t m : s_set) in_s[m] = true;
    for (std::size_t m = 1; m <= m_max; ++m) {
        fwd.step();
        if (!in_s[m]) continue;
        for (const auto& p : fwd.pieces) {
            // image interval [lo+off, hi+off) vs J''
            if (p.lo + p.off < t_hi && p.hi + p.off > t_lo) return false;
        }
    }
    return true;
}

}  // namespace lb_detail

struct LowerBoundOptions {
    double eps = 0.1;
    std::optional<double> c0_override;
    std::size_t dk_samples = 24;
    std::uint64_t seed = 17;
};

inline LowerBoundCertificate lower_bound_construct(const RotationRepresentation& rep,
                                                   std::size_t n_horizon,
                                                   LowerBoundOptions opt = LowerBoundOptions()) {
    if (n_horizon < 3) throw TooSmallN("need N >= 3");
    const IET& iet = rep.ambient;
    const Rational& a = rep.base_len;
    const double ad = to_double(a);
    LowerBoundCertificate cert;
    cert.n_horizon = n_horizon;
    cert.eps = opt.eps;

    // measured Denjoy-Koksma constant on k <= floor(aN)
    Int k_cap = rational_floor(a * Rational(static_cast<long>(n_horizon)));
    std::size_t k_max = static_cast<std::size_t>(k_cap.get_ui());
    std::vector<std::size_t> k_grid;
    for (std::size_t k = 3; k <= k_max; k = std::max(k + 1, k + k / 8)) k_grid.push_back(k);
    if (k_max >= 3) k_grid.push_back(k_max);
    DKReport dk = denjoy_koksma_check(rep, k_grid, opt.eps, opt.dk_samples, opt.seed);
    cert.c_eps = dk.c_eps;
    cert.a_const = 2 * ad * cert.c_eps + 1;
    cert.c0 = opt.c0_override.value_or(1.0 / (30.0 * cert.a_const));

    const double log_n = std::log(static_cast<double>(n_horizon));
    const double loglog = std::log(log_n);
    const double denom = log_n * std::pow(loglog, 1 + opt.eps);
    double s_real = cert.c0 * ad / denom;

    // snap s down to a multiple of 20/q so every bump breakpoint stays on grid
    Int q = iet_denominator(iet);
    Rational s_snapped(rational_floor(Rational(s_real) * Rational(q) / 20) * 20, q);
    s_snapped.canonicalize();
    if (s_snapped <= 0) throw TooSmallN("bump scale s collapsed to zero on this grid");
    cert.s = s_snapped;
    const Rational& s = cert.s;
    if (2 * s >= a) throw TooSmallN("J_N does not fit inside the base interval");
    cert.j_lo = s;  // J_N = [s, 2s)

    // S = { 1 <= n <= N-1 : (floor(aN) - floor(an)) a theta mod a in [0, s/2) }
    auto mod_base = [&](const Rational& x) {
        Rational r = x - Rational(rational_floor(x / a)) * a;
        return r;
    };
    Rational half_j = s / 2;
    Int floor_an_n = rational_floor(a * Rational(static_cast<long>(n_horizon)));
    for (std::size_t n = 1; n < n_horizon; ++n) {
        Int dn = floor_an_n - rational_floor(a * Rational(static_cast<long>(n)));
        Rational shift = mod_base(Rational(dn) * rep.w);  // (floor(aN)-floor(an)) a theta mod a
        if (shift < half_j) cert.s_set.push_back(n);
    }

    // H_N(J_N') with J_N' = [0, 3s): union of R^l(J') over the DK window
    double width = cert.c_eps * ad * log_n * std::pow(loglog, 1 + opt.eps);
    long l_lo = static_cast<long>(floor_an_n.get_si()) - static_cast<long>(std::floor(width));
    long l_hi = static_cast<long>(floor_an_n.get_si()) +
                static_cast<long>(std::ceil((1 + ad * cert.c_eps) * log_n *
                                            std::pow(loglog, 1 + opt.eps)));
    std::vector<std::pair<Rational, Rational>> cover;
    Rational jp_len = 3 * s;
    for (long l = l_lo; l <= l_hi; ++l) {
        // R^l(J') = [l w mod a, + 3s), possibly wrapped
        Rational lw = Rational(l) * rep.w;
        Rational start = lw - Rational(rational_floor(lw / a)) * a;
        if (start + jp_len <= a) {
            cover.emplace_back(start, start + jp_len);
        } else {
            cover.emplace_back(start, a);
            cover.emplace_back(Rational(0), start + jp_len - a);
        }
    }
    std::sort(cover.begin(), cover.end());
    std::vector<std::pair<Rational, Rational>> merged;
    for (const auto& iv : cover) {
        if (!merged.empty() && iv.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, iv.second);
        else
            merged.push_back(iv);
    }
    double cover_len = 0;
    for (const auto& iv : merged) cover_len += to_double(iv.second - iv.first);
    cert.j_cover_len = cover_len;

    // J'' = an s-gap in the complement of the cover
    std::optional<Rational> gap_lo;
    Rational cursor(0);
    for (const auto& iv : merged) {
        if (iv.first - cursor >= s) {
            gap_lo = cursor;
            break;
        }
        cursor = std::max(cursor, iv.second);
    }
    if (!gap_lo && a - cursor >= s) gap_lo = cursor;
    if (!gap_lo)
        throw NoGapFound("no s-gap in the complement of H_N(J_N')", cover_len);
    // snap the gap start up to the coordinate grid
    Int num = rational_floor(*gap_lo * Rational(q));
    if (Rational(num, q) < *gap_lo) num += 1;
    cert.jpp_lo = Rational(num, q);
    cert.jpp_lo.canonicalize();

    // bumps
    Observable f = Observable::bump(cert.j_lo, s);
    Observable g = Observable::bump(cert.jpp_lo, s);
    cert.f_l1 = f.l1_norm_nonneg_exact();
    cert.g_l1 = g.l1_norm_nonneg_exact();
    cert.f_lip_norm = f.lip_norm();
    cert.g_lip_norm = g.lip_norm();
    double s_d = to_double(s);
    cert.lip_ok = cert.f_lip_norm <= 15.0 / s_d && cert.g_lip_norm <= 15.0 / s_d;
    cert.l1_product_ok =
        cert.f_l1 * cert.f_l1 * cert.g_l1 * cert.g_l1 >= (s / 2) * (s / 2) * (s / 2) * (s / 2);
    cert.cardinality_ok =
        Rational(static_cast<long>(cert.s_set.size())) >=
        a * Rational(static_cast<long>(n_horizon)) * s / 4;

    // exact disjointness of J'' from the forward images over S
    if (mpz_sizeinbase(q.get_mpz_t(), 2) <= 62)
        cert.disjoint_verified = lb_detail::forward_images_avoid<std::int64_t>(
            iet, q, cert.j_lo, s, cert.jpp_lo, cert.s_set);
    else
        cert.disjoint_verified =
            lb_detail::forward_images_avoid<Int>(iet, q, cert.j_lo, s, cert.jpp_lo, cert.s_set);

    // Q_N(g, f): the J'' bump rides T^n so the S terms vanish exactly
    CorrelationSeries cs = correlation_series(iet, g, f, n_horizon);
    cert.core_zero_verified = true;
    for (std::size_t n : cert.s_set)
        cert.core_zero_verified = cert.core_zero_verified && cs.core_zero[n];
    double q_acc = 0;
    for (double c : cs.corr) q_acc += c * c;
    cert.q_n = q_acc;
    Rational core = cert.f_l1 * cert.g_l1;
    cert.exact_core = Rational(static_cast<long>(cert.s_set.size())) * core * core;
    double denom_d = to_double(core * core) * static_cast<double>(cert.s_set.size());
    cert.ratio = denom_d > 0 ? cert.q_n / denom_d : 0.0;

    cert.certified = cert.disjoint_verified && cert.core_zero_verified && cert.cardinality_ok &&
                     cert.l1_product_ok && cert.lip_ok && !cert.s_set.empty() &&
                     cert.ratio >= 1.0 - 1e-9;
    return cert;
}

}  // namespace ietlab
