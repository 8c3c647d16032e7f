#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "ietlab/permutation.hpp"
#include "ietlab/surface.hpp"

namespace ietlab {

struct LyapunovEstimate {
    double theta1 = 0, theta2 = 0;      // per Zorich step
    double stderr1 = 0, stderr2 = 0;    // across samples
    bool theta2_defined = false;        // only when g >= 2
    double theta1_per_log_norm = 0;     // alternative normalization (per log ||B_block||_1)
    std::size_t n_samples = 0, n_steps = 0, n_resamples = 0;
};

// Monte Carlo estimate of the top two Lyapunov exponents of the Zorich
// cocycle restricted to H(pi): growth of a re-orthonormalized 2-frame pushed
// through the blocks, driven by the renormalized induction on double
// precision lengths.  Estimates, not proofs; the paper guarantees positivity.
inline LyapunovEstimate lyapunov_estimate(const Permutation& perm, std::uint64_t seed,
                                          std::size_t n_steps, std::size_t n_samples,
                                          std::size_t ortho_every = 16) {
    if (n_steps < 1 || n_samples < 1) throw ConfigError("need n_steps, n_samples >= 1");
    SurfaceData sd = surface_data(perm);
    std::size_t d = perm.size();
    std::size_t frame = sd.genus >= 2 ? 2 : 1;

    std::mt19937_64 rng(seed);
    std::vector<double> t1s, t2s, tlogs;
    std::size_t resamples = 0;

    for (std::size_t sample = 0; sample < n_samples; ++sample) {
        for (;;) {  // resample on numerical degeneration
            try {
                std::exponential_distribution<double> expo(1.0);
                std::vector<double> lam(d);
                double tot = 0;
                for (auto& x : lam) {
                    x = expo(rng) + 1e-12;
                    tot += x;
                }
                for (auto& x : lam) x /= tot;
                Permutation p = perm;
                // random frame inside H(pi)
                std::normal_distribution<double> gauss;
                std::vector<std::vector<double>> v(frame, std::vector<double>(d, 0.0));
                for (std::size_t k = 0; k < frame; ++k)
                    for (const auto& basis_vec : sd.h_basis) {
                        double c = gauss(rng);
                        for (std::size_t i = 0; i < d; ++i)
                            v[k][i] += c * mpz_get_d(basis_vec[i].get_mpz_t());
                    }
                double log1 = 0, log2 = 0, log_norm_acc = 0;
                auto orthonormalize = [&]() {
                    double r1 = 0;
                    for (double x : v[0]) r1 += x * x;
                    r1 = std::sqrt(r1);
                    if (!(r1 > 1e-300)) throw DegenerateFrame("frame vector collapsed");
                    for (auto& x : v[0]) x /= r1;
                    log1 += std::log(r1);
                    if (frame == 2) {
                        double ip = 0;
                        for (std::size_t i = 0; i < d; ++i) ip += v[1][i] * v[0][i];
                        for (std::size_t i = 0; i < d; ++i) v[1][i] -= ip * v[0][i];
                        double r2 = 0;
                        for (double x : v[1]) r2 += x * x;
                        r2 = std::sqrt(r2);
                        if (!(r2 > 1e-300)) throw DegenerateFrame("frame vector collapsed");
                        for (auto& x : v[1]) x /= r2;
                        log2 += std::log(r2);
                    }
                };
                std::vector<std::int64_t> blk(d * d);
                for (std::size_t block = 0; block < n_steps; ++block) {
                    std::size_t at = p.top_last(), ab = p.bottom_last();
                    bool top_type = lam[at] > lam[ab];
                    std::size_t digits = 0;
                    std::fill(blk.begin(), blk.end(), 0);
                    for (std::size_t i = 0; i < d; ++i) blk[i * d + i] = 1;
                    while ((lam[at] > lam[ab]) == top_type) {
                        if (lam[at] == lam[ab] || ++digits > 1000000)
                            throw DegenerateFrame("length iteration degenerated");
                        std::size_t r, c;  // elementary I + E_{r,c}
                        if (top_type) {
                            lam[at] -= lam[ab];
                            r = ab;
                            c = at;
                            p = p.after_top_move();
                        } else {
                            lam[ab] -= lam[at];
                            r = at;
                            c = ab;
                            p = p.after_bottom_move();
                        }
                        for (std::size_t k = 0; k < frame; ++k) v[k][r] += v[k][c];
                        for (std::size_t j = 0; j < d; ++j) blk[r * d + j] += blk[c * d + j];
                        at = p.top_last();
                        ab = p.bottom_last();
                        if (lam[at] <= 0 || lam[ab] <= 0)
                            throw DegenerateFrame("length underflow");
                    }
                    // renormalize lengths; accumulate the block's log 1-norm
                    double tot2 = 0;
                    for (double x : lam) tot2 += x;
                    if (!(tot2 > 1e-300)) throw DegenerateFrame("length underflow");
                    for (auto& x : lam) x /= tot2;
                    double blk_norm = 0;
                    for (std::int64_t e : blk) blk_norm += static_cast<double>(e);
                    log_norm_acc += std::log(blk_norm);
                    if ((block + 1) % ortho_every == 0) orthonormalize();
                }
                orthonormalize();
                double steps_d = static_cast<double>(n_steps);
                t1s.push_back(log1 / steps_d);
                if (frame == 2) t2s.push_back(log2 / steps_d);
                tlogs.push_back(log_norm_acc > 0 ? log1 / log_norm_acc : 0.0);
                break;
            } catch (const DegenerateFrame&) {
                if (++resamples > 16 * n_samples) throw;
            }
        }
    }

    auto mean_stderr = [](const std::vector<double>& xs) {
        double m = 0;
        for (double x : xs) m += x;
        m /= static_cast<double>(xs.size());
        if (xs.size() < 2) return std::make_pair(m, std::numeric_limits<double>::infinity());
        double var = 0;
        for (double x : xs) var += (x - m) * (x - m);
        var /= static_cast<double>(xs.size() - 1);
        return std::make_pair(m, std::sqrt(var / static_cast<double>(xs.size())));
    };

    LyapunovEstimate est;
    est.n_samples = n_samples;
    est.n_steps = n_steps;
    est.n_resamples = resamples;
    auto [m1, s1] = mean_stderr(t1s);
    est.theta1 = m1;
    est.stderr1 = s1;
    est.theta2_defined = frame == 2;
    if (est.theta2_defined) {
        auto [m2, s2] = mean_stderr(t2s);
        est.theta2 = m2;
        est.stderr2 = s2;
    }
    auto [ml, sl] = mean_stderr(tlogs);
    est.theta1_per_log_norm = ml;
    (void)sl;
    return est;
}

}  // namespace ietlab
