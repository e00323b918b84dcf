#include "scalewave/propagator.hpp"

#include <cmath>
#include <stdexcept>

namespace scalewave {

PropagatorConstants PropagatorConstants::make(int n) {
    if (n < 4 || n % 2 != 0)
        throw std::domain_error("PropagatorConstants: requires even n >= 4");
    PropagatorConstants pc;
    pc.n = n;
    pc.m = (n - 2) / 2;
    pc.c_n = std::sqrt(M_PI) * std::tgamma(0.5 * (n - 1.0));
    return pc;
}

double PropagatorConstants::c_n_double_factorial() const {
    double dfact = 1.0;
    for (int k = n - 3; k >= 2; k -= 2) dfact *= k;
    return M_PI * std::pow(2.0, -0.5 * (n - 2.0)) * dfact;
}

namespace {

constexpr double kDiagonalTol = 1e-12;

bool on_diagonal(double t, double r) { return std::abs(t - r) <= kDiagonalTol * std::max({t, r, 1.0}); }

double dlg(const RadialProfile& g, int m, double lambda) {
    // d/dlambda (lambda^(2m) g(lambda))
    return 2.0 * m * std::pow(lambda, 2 * m - 1) * g.eval(lambda) +
           std::pow(lambda, 2 * m) * g.eval_deriv(lambda, 1);
}

}  // namespace

ThetaParts theta_w_parts(const RadialProfile& g, int m, double t, double r,
                         const QuadOptions& opts, bool with_w34, bool with_w56) {
    if (!(r > 0.0) || t < 0.0)
        throw std::domain_error("theta: requires t >= 0 and r > 0");
    if (g.origin_exponent + 2 * m + 1 <= -1.0)
        throw std::domain_error("theta: profile too singular at the origin");

    ThetaParts parts;
    if (t == 0.0) return parts;  // all integration intervals are empty

    const KernelSum& Hm = build_Hj(m, m);
    QuadOptions inner = opts.scaled(0.1);
    inner.max_panels = std::max<std::size_t>(16, opts.max_panels / 2);
    const double lo = std::abs(t - r);
    const double hi = t + r;

    if (with_w56 && !on_diagonal(t, r)) {
        // hot path (the Duhamel integrand): value and derivative kernels
        // share the lambda panels
        const KernelSum& Hm1 = build_Hj(m, m - 1);
        auto f15 = [&](double lam) {
            const double a = std::pow(lam, 2 * m + 1) * g.eval(lam);
            const double b = dlg(g, m, lam);
            return std::pair{a * eval_Kj(Hm, lam, t, r, inner),
                             b * eval_dr_Kj(Hm1, lam, t, r, inner)};
        };
        const PairQuadResult r15 = integrate_endpoint_sqrt_pair(f15, lo, hi, true, true, opts);
        parts.w1 = r15.first;
        parts.w5 = r15.second;
        if (t > r) {
            auto f26 = [&](double lam) {
                const double a = std::pow(lam, 2 * m + 1) * g.eval(lam);
                const double b = dlg(g, m, lam);
                return std::pair{a * eval_Ktildej(Hm, lam, t, r, inner),
                                 b * eval_dr_Ktildej(Hm1, lam, t, r, inner)};
            };
            const PairQuadResult r26 =
                integrate_endpoint_sqrt_pair(f26, 0.0, t - r, true, true, opts);
            parts.w2 = r26.first;
            parts.w6 = r26.second;
        } else {
            // boundary form: the kernel argument lambda = r-t moves with r, so
            // the total derivative carries the lambda part as well
            const double lam = r - t;
            parts.w6 = std::pow(lam, 2 * m) * g.eval(lam) *
                       (eval_dr_Kj(Hm1, lam, t, r, inner) +
                        eval_dlambda_Kj(Hm1, lam, t, r, inner));
        }
    } else {
        // w1: the K_m kernel is (lambda-(t-r))^(-1/2)-singular at lo when
        // t > r, and has a sqrt-type cusp toward hi.
        auto f1 = [&](double lam) {
            return std::pow(lam, 2 * m + 1) * g.eval(lam) * eval_Kj(Hm, lam, t, r, inner);
        };
        parts.w1 = integrate_endpoint_sqrt(f1, lo, hi, true, true, opts).value;
        if (t > r) {
            auto f2 = [&](double lam) {
                return std::pow(lam, 2 * m + 1) * g.eval(lam) *
                       eval_Ktildej(Hm, lam, t, r, inner);
            };
            parts.w2 = integrate_endpoint_sqrt(f2, 0.0, t - r, true, true, opts).value;
        }
        if (with_w56)
            throw std::domain_error("theta: w3..w6 representations exclude t = r");
    }

    if (!with_w34) return parts;
    if (on_diagonal(t, r))
        throw std::domain_error("theta: w3..w6 representations exclude t = r");

    const KernelSum& Hm1 = build_Hj(m, m - 1);
    auto f3 = [&](double lam) { return dlg(g, m, lam) * eval_Kj(Hm1, lam, t, r, inner); };
    parts.w3 = integrate_endpoint_sqrt(f3, lo, hi, true, true, opts).value;
    if (t > r) {
        auto f4 = [&](double lam) {
            return dlg(g, m, lam) * eval_Ktildej(Hm1, lam, t, r, inner);
        };
        parts.w4 = integrate_endpoint_sqrt(f4, 0.0, t - r, true, true, opts).value;
    } else {
        const double lam = r - t;
        parts.w4 = std::pow(lam, 2 * m) * g.eval(lam) * eval_Kj(Hm1, lam, t, r, inner);
    }
    return parts;
}

double theta_w12(const RadialProfile& g, int m, double t, double r, const QuadOptions& opts) {
    const ThetaParts parts = theta_w_parts(g, m, t, r, opts, false, false);
    return (parts.w1 + parts.w2) * std::pow(r, -2 * m);
}

double theta_w34(const RadialProfile& g, int m, double t, double r, const QuadOptions& opts) {
    const ThetaParts parts = theta_w_parts(g, m, t, r, opts, true, false);
    return 0.5 * (parts.w3 + parts.w4) * std::pow(r, -2 * m);
}

double theta_w56_over(const RadialProfile& g, int m, double t, double r,
                      const QuadOptions& opts) {
    const ThetaParts parts = theta_w_parts(g, m, t, r, opts, false, true);
    return 0.5 * (parts.w5 + parts.w6) * std::pow(r, -2 * m);
}

double theta_r_derivative(const RadialProfile& g, int m, double t, double r,
                          const QuadOptions& opts) {
    return theta_w56_over(g, m, t, r, opts) - 2.0 * m / r * theta_w12(g, m, t, r, opts);
}

namespace {

// Theta is odd in t (zero position data, time-reversible equation), which
// makes the centered stencil valid down to t = 0.
double theta_odd(const RadialProfile& g, int m, double t, double r, const QuadOptions& opts) {
    if (t == 0.0) return 0.0;
    const double v = theta_w12(g, m, std::abs(t), r, opts);
    return t < 0.0 ? -v : v;
}

double theta_dt(const RadialProfile& g, int m, double t, double r, const QuadOptions& opts) {
    const double h = 1e-3 * std::max(1.0, t);
    auto central = [&](double step) {
        return (theta_odd(g, m, t + step, r, opts) - theta_odd(g, m, t - step, r, opts)) /
               (2.0 * step);
    };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

double theta_dr_any(const RadialProfile& g, int m, double t, double r, const QuadOptions& opts) {
    if (!on_diagonal(t, r)) return theta_r_derivative(g, m, t, r, opts);
    // On the diagonal the w5/w6 representation is excluded; fall back to a
    // centered stencil on the everywhere-valid w1/w2 representation.
    const double h = 1e-4 * std::max(1.0, r);
    auto central = [&](double step) {
        return (theta_w12(g, m, t, r + step, opts) - theta_w12(g, m, t, r - step, opts)) /
               (2.0 * step);
    };
    const double d1 = central(h);
    const double d2 = central(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

LinearSolution v0_solution(const RadialProfile& f, const RadialProfile& g, int n,
                           const QuadOptions& opts) {
    const PropagatorConstants pc = PropagatorConstants::make(n);
    const int m = pc.m;
    const double inv_cn = 1.0 / pc.c_n;

    LinearSolution sol;
    sol.value = [=](double t, double r) {
        return inv_cn * (theta_odd(g, m, t, r, opts) + theta_dt(f, m, t, r, opts));
    };
    sol.r_derivative = [=](double t, double r) {
        const double drg = t == 0.0 ? 0.0 : theta_dr_any(g, m, t, r, opts);
        const double h = 1e-3 * std::max(1.0, t);
        auto dr_f_at = [&](double tt) {
            if (tt == 0.0) return 0.0;
            const double v = theta_dr_any(f, m, std::abs(tt), r, opts);
            return tt < 0.0 ? -v : v;
        };
        auto central = [&](double step) {
            return (dr_f_at(t + step) - dr_f_at(t - step)) / (2.0 * step);
        };
        const double dtdrf = (4.0 * central(0.5 * h) - central(h)) / 3.0;
        return inv_cn * (drg + dtdrf);
    };
    return sol;
}

}  // namespace scalewave
