#pragma once

#include <cmath>
#include <functional>

namespace ietlab {

// Recursive adaptive Simpson with an absolute tolerance.  Exact (up to
// rounding) on quadratics, which covers products of linear pieces.
inline double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                               double tol, int depth = 24) {
    double m = (a + b) / 2;
    double fa = f(a), fm = f(m), fb = f(b);
    std::function<double(double, double, double, double, double, double, double, int)> rec =
        [&](double x0, double x2, double f0, double f1, double f2, double whole, double eps,
            int d) -> double {
        double x1l = (x0 + x2) / 2;
        double lm = (x0 + x1l) / 2, rm = (x1l + x2) / 2;
        double flm = f(lm), frm = f(rm);
        double left = (x1l - x0) / 6 * (f0 + 4 * flm + f1);
        double right = (x2 - x1l) / 6 * (f1 + 4 * frm + f2);
        if (d <= 0 || std::abs(left + right - whole) < 15 * eps)
            return left + right + (left + right - whole) / 15;
        return rec(x0, x1l, f0, flm, f1, left, eps / 2, d - 1) +
               rec(x1l, x2, f1, frm, f2, right, eps / 2, d - 1);
    };
    double whole = (b - a) / 6 * (fa + 4 * fm + fb);
    return rec(a, b, fa, fm, fb, whole, tol, depth);
}

}  // namespace ietlab
