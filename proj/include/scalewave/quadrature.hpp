#pragma once

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <cstddef>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace scalewave {

struct QuadOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    std::size_t max_panels = 2000;

    QuadOptions scaled(double factor) const {
        QuadOptions o = *this;
        o.abs_tol = std::max(o.abs_tol * factor, 1e-16);
        o.rel_tol = std::max(o.rel_tol * factor, 1e-12);
        return o;
    }
};

struct QuadResult {
    double value = 0.0;
    double error = 0.0;
    std::size_t evals = 0;
    bool converged = true;
};

class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double value, double achieved_error)
        : std::runtime_error(what), value_(value), achieved_error_(achieved_error) {}
    double value() const { return value_; }
    double achieved_error() const { return achieved_error_; }

private:
    double value_;
    double achieved_error_;
};

namespace detail {

// 7-15 Gauss-Kronrod pair (QUADPACK dqk15 abscissae/weights, positive half).
inline constexpr double gk_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double gk_wk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double gk_wg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

template <class F>
inline Panel gk15(F&& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = gk_wk[7] * fc;
    double gauss = gk_wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * gk_nodes[i];
        const double fsum = f(c - dx) + f(c + dx);
        kron += gk_wk[i] * fsum;
        if (i % 2 == 1) gauss += gk_wg[i / 2] * fsum;
    }
    kron *= h;
    gauss *= h;
    return Panel{a, b, kron, std::abs(kron - gauss)};
}

}  // namespace detail

// Adaptive Gauss-Kronrod bisection on [a,b]. Nodes are interior, so
// integrable endpoint singularities never get evaluated at the endpoint.
template <class F>
QuadResult integrate_adaptive(F&& f, double a, double b, const QuadOptions& opts = {}) {
    QuadResult res;
    if (!(b > a)) return res;

    detail::Panel p0 = detail::gk15(f, a, b);
    res.evals = 15;
    double total = p0.value;
    double err = p0.error;

    auto tol = [&](double v) { return std::max(opts.abs_tol, opts.rel_tol * std::abs(v)); };
    if (std::isfinite(total) && err <= tol(total)) {  // single-panel fast accept
        res.value = total;
        res.error = err;
        return res;
    }

    std::priority_queue<detail::Panel> panels;
    panels.push(p0);

    while (err > tol(total) && panels.size() < opts.max_panels) {
        detail::Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {  // interval exhausted at double precision
            panels.push(detail::Panel{worst.a, worst.b, worst.value, 0.0});
            err -= worst.error;
            continue;
        }
        detail::Panel left = detail::gk15(f, worst.a, mid);
        detail::Panel right = detail::gk15(f, mid, worst.b);
        res.evals += 30;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        panels.push(left);
        panels.push(right);
    }

    res.value = total;
    res.error = err;
    res.converged = std::isfinite(total) && std::isfinite(err) &&
                    (err <= tol(total) * 1.001 || err <= opts.abs_tol * 8);
    return res;
}

struct PairQuadResult {
    double first = 0.0;
    double second = 0.0;
    double error = 0.0;
    std::size_t evals = 0;
    bool converged = true;
};

// Two-component adaptive Gauss-Kronrod for integrands sharing all of their
// expensive state (e.g. a value/derivative pair); error control on the sum of
// component error estimates.
template <class F>
PairQuadResult integrate_adaptive_pair(F&& f, double a, double b, const QuadOptions& opts = {}) {
    PairQuadResult res;
    if (!(b > a)) return res;

    struct Panel {
        double a, b, va, vb, mass, error;
        bool operator<(const Panel& o) const { return error < o.error; }
    };
    auto gk = [&](double lo, double hi) {
        const double c = 0.5 * (lo + hi);
        const double h = 0.5 * (hi - lo);
        auto fc = f(c);
        double ka = detail::gk_wk[7] * fc.first, kb = detail::gk_wk[7] * fc.second;
        double ga = detail::gk_wg[3] * fc.first, gb = detail::gk_wg[3] * fc.second;
        double l1 = detail::gk_wk[7] * (std::abs(fc.first) + std::abs(fc.second));
        for (int i = 0; i < 7; ++i) {
            const double dx = h * detail::gk_nodes[i];
            const auto fl = f(c - dx), fr = f(c + dx);
            ka += detail::gk_wk[i] * (fl.first + fr.first);
            kb += detail::gk_wk[i] * (fl.second + fr.second);
            l1 += detail::gk_wk[i] * (std::abs(fl.first) + std::abs(fl.second) +
                                      std::abs(fr.first) + std::abs(fr.second));
            if (i % 2 == 1) {
                ga += detail::gk_wg[i / 2] * (fl.first + fr.first);
                gb += detail::gk_wg[i / 2] * (fl.second + fr.second);
            }
        }
        ka *= h;
        kb *= h;
        ga *= h;
        gb *= h;
        l1 *= h;
        return Panel{lo, hi, ka, kb, l1, std::abs(ka - ga) + std::abs(kb - gb)};
    };

    Panel p0 = gk(a, b);
    res.evals = 15;
    double ta = p0.va, tb = p0.vb, mass = p0.mass, err = p0.error;
    // tolerance anchored on the integrated |.| mass: cancellation between the
    // two cone contributions must not force refinement below the inner noise
    auto tol = [&] { return std::max(opts.abs_tol, opts.rel_tol * mass); };
    if (std::isfinite(ta) && std::isfinite(tb) && err <= tol()) {
        res.first = ta;
        res.second = tb;
        res.error = err;
        return res;
    }

    std::priority_queue<Panel> panels;
    panels.push(p0);
    while (err > tol() && panels.size() < opts.max_panels) {
        Panel worst = panels.top();
        panels.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (mid <= worst.a || mid >= worst.b) {
            panels.push(Panel{worst.a, worst.b, worst.va, worst.vb, worst.mass, 0.0});
            err -= worst.error;
            continue;
        }
        Panel l = gk(worst.a, mid), r = gk(mid, worst.b);
        res.evals += 30;
        ta += l.va + r.va - worst.va;
        tb += l.vb + r.vb - worst.vb;
        mass += l.mass + r.mass - worst.mass;
        err += l.error + r.error - worst.error;
        panels.push(l);
        panels.push(r);
    }
    res.first = ta;
    res.second = tb;
    res.error = err;
    res.converged = std::isfinite(ta) && std::isfinite(tb) && std::isfinite(err);
    return res;
}

// Paired version of the endpoint-substituted integral below.
template <class F>
PairQuadResult integrate_endpoint_sqrt_pair(F&& f, double a, double b, bool sing_left,
                                            bool sing_right, const QuadOptions& opts = {}) {
    PairQuadResult res;
    if (!(b > a)) return res;
    const double mid = 0.5 * (a + b);
    auto accumulate = [&](const PairQuadResult& part) {
        res.first += part.first;
        res.second += part.second;
        res.error += part.error;
        res.evals += part.evals;
        res.converged = res.converged && part.converged;
    };
    auto scaled_at = [&](double x, double jac) {
        auto val = f(x);
        val.first *= jac;
        val.second *= jac;
        return val;
    };
    if (sing_left) {
        accumulate(integrate_adaptive_pair(
            [&](double s) {
                const double x = a + s * s;
                if (x <= a) return std::pair{0.0, 0.0};
                return scaled_at(x, 2.0 * s);
            },
            0.0, std::sqrt(mid - a), opts));
    } else {
        accumulate(integrate_adaptive_pair(f, a, mid, opts));
    }
    if (sing_right) {
        accumulate(integrate_adaptive_pair(
            [&](double s) {
                const double x = b - s * s;
                if (x >= b) return std::pair{0.0, 0.0};
                return scaled_at(x, 2.0 * s);
            },
            0.0, std::sqrt(b - mid), opts));
    } else {
        accumulate(integrate_adaptive_pair(f, mid, b, opts));
    }
    return res;
}

// Integrate f over [a,b] with algebraic (half-power) endpoint behavior:
// split at the midpoint and substitute x = a + s^2 (resp. x = b - s^2) on the
// flagged side, which turns (x-a)^(k-1/2) factors into smooth s-powers.
template <class F>
QuadResult integrate_endpoint_sqrt(F&& f, double a, double b, bool sing_left, bool sing_right,
                                   const QuadOptions& opts = {}) {
    QuadResult res;
    if (!(b > a)) return res;
    const double mid = 0.5 * (a + b);

    auto accumulate = [&](const QuadResult& part) {
        res.value += part.value;
        res.error += part.error;
        res.evals += part.evals;
        res.converged = res.converged && part.converged;
    };

    if (sing_left) {
        const double smax = std::sqrt(mid - a);
        accumulate(integrate_adaptive(
            [&](double s) {
                const double x = a + s * s;
                if (x <= a) return 0.0;  // s^2 rounded away: negligible sliver
                return 2.0 * s * f(x);
            },
            0.0, smax, opts));
    } else {
        accumulate(integrate_adaptive(f, a, mid, opts));
    }
    if (sing_right) {
        const double smax = std::sqrt(b - mid);
        accumulate(integrate_adaptive(
            [&](double s) {
                const double x = b - s * s;
                if (x >= b) return 0.0;
                return 2.0 * s * f(x);
            },
            0.0, smax, opts));
    } else {
        accumulate(integrate_adaptive(f, mid, b, opts));
    }
    return res;
}

// Integrate across a sorted list of interior breakpoints (kinks, regime
// switches); each sub-panel may additionally carry sqrt endpoint handling.
// With sub_at_breaks the substitution is applied on both sides of every
// breakpoint too (for half-power cusps at interior points).
template <class F>
QuadResult integrate_with_breakpoints(F&& f, double a, double b, std::vector<double> breaks,
                                      bool sing_left, bool sing_right, const QuadOptions& opts = {},
                                      bool sub_at_breaks = false) {
    QuadResult res;
    if (!(b > a)) return res;
    breaks.erase(std::remove_if(breaks.begin(), breaks.end(),
                                [&](double x) { return !(x > a && x < b); }),
                 breaks.end());
    std::sort(breaks.begin(), breaks.end());
    double lo = a;
    bool first = true;
    for (std::size_t i = 0; i <= breaks.size(); ++i) {
        const double hi = i < breaks.size() ? breaks[i] : b;
        if (!(hi > lo)) continue;
        const bool sl = (first ? sing_left : sub_at_breaks);
        const bool sr = (i == breaks.size() ? sing_right : sub_at_breaks);
        QuadResult part = integrate_endpoint_sqrt(f, lo, hi, sl, sr, opts);
        res.value += part.value;
        res.error += part.error;
        res.evals += part.evals;
        res.converged = res.converged && part.converged;
        lo = hi;
        first = false;
    }
    return res;
}

inline void require_converged(const QuadResult& res, const std::string& context) {
    if (!res.converged) {
        char detail[64];
        std::snprintf(detail, sizeof(detail), " (achieved error %.3e)", res.error);
        throw QuadratureError("quadrature did not converge in " + context + detail, res.value,
                              res.error);
    }
}

}  // namespace scalewave
