#pragma once

// Test-only oracles, independent of the library's evaluation paths.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracles {

// 5-point fourth-order first derivative.
template <class F>
double derivative_5pt(F&& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}

// Simple Richardson-extrapolated central difference.
template <class F>
double derivative_richardson(F&& f, double x, double h) {
    const double d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    const double d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    return (4.0 * d2 - d1) / 3.0;
}

// Tolerance-halving adaptive Simpson (the independent quadrature oracle).
namespace detail {
template <class F>
double simpson(F&& f, double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <class F>
double adaptive_simpson_rec(F&& f, double a, double b, double fa, double fm, double fb,
                            double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol, int depth = 52) {
    if (!(b > a)) return 0.0;
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = detail::simpson(f, a, b, fa, fm, fb);
    return detail::adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = xs.size();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double lx = std::log(xs[i]), ly = std::log(ys[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::mt19937_64 rng(std::uint64_t seed = 20240817ull) { return std::mt19937_64(seed); }

}  // namespace oracles
