#include "scalewave/estimates.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "scalewave/weighted_norms.hpp"

namespace scalewave {

namespace {

double bracket(double x) { return 1.0 + std::abs(x); }

std::vector<double> jittered(std::vector<double> xs, const HarnessConfig& cfg) {
    if (cfg.jitter <= 0.0) return xs;
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(-cfg.jitter, cfg.jitter);
    for (double& x : xs) x *= std::exp(u(rng));
    return xs;
}

std::vector<double> log_grid(double lo, double hi, int n) {
    std::vector<double> xs;
    xs.reserve(n);
    for (int i = 0; i < n; ++i) xs.push_back(lo * std::pow(hi / lo, i / (n - 1.0)));
    return xs;
}

// int_{-X}^{X} <x>^-a <x+y>^-b dx, truncated where the envelope is below
// 1e-14 of its peak (but never below the probe extent, so a divergent
// integrand shows up as growth under domain doubling) plus the analytic
// power-law tail estimate.
double convolution_integral(double a, double b, double y, double domain_scale,
                            const QuadOptions& opts) {
    const double s = a + b;
    double X = std::max(8.0 * std::abs(y), 4.0 * domain_scale);
    if (s > 1.0) X = std::max(X, std::pow(1e-14, -1.0 / s));
    auto f = [&](double x) {
        return std::pow(bracket(x), -a) * std::pow(bracket(x + y), -b);
    };
    QuadResult res = integrate_with_breakpoints(f, -X, X, {0.0, -y}, false, false, opts);
    const double tail = s > 1.0 ? 2.0 * std::pow(1.0 + X, 1.0 - s) / (s - 1.0) : 0.0;
    return res.value + tail;
}

EstimateReport sup_over_y(const std::string& name, const HarnessConfig& cfg,
                          const std::vector<double>& ys_base, const std::vector<double>& ys_grown,
                          const std::function<double(double)>& weighted_lhs) {
    EstimateReport rep;
    rep.name = name;
    for (double y : ys_base) rep.weighted_sup = std::max(rep.weighted_sup, weighted_lhs(y));
    rep.weighted_sup_grown = rep.weighted_sup;
    for (double y : ys_grown)
        rep.weighted_sup_grown = std::max(rep.weighted_sup_grown, weighted_lhs(y));
    rep.stability = rep.weighted_sup > 0.0
                        ? std::abs(rep.weighted_sup_grown - rep.weighted_sup) / rep.weighted_sup
                        : 0.0;
    rep.pass = std::isfinite(rep.weighted_sup_grown) && rep.stability < cfg.stability_threshold;
    rep.probe = "y log grid to " + std::to_string(cfg.y_max) + " (doubled for stability)";
    return rep;
}

}  // namespace

EstimateReport verify_convolution_bound(double a, double b, const HarnessConfig& cfg) {
    if (a < 0.0 || b < 0.0)
        throw std::domain_error("verify_convolution_bound: requires a, b >= 0");
    if (a + b <= 1.0 && !cfg.allow_violation)
        throw std::domain_error("verify_convolution_bound: requires a + b > 1 (set "
                                "allow_violation for the negative control)");

    std::vector<double> ys{0.0};
    for (double y : jittered(log_grid(0.1, cfg.y_max, cfg.n_y), cfg)) {
        ys.push_back(y);
        ys.push_back(-y);
    }
    std::vector<double> ys2;
    for (double y : log_grid(cfg.y_max, 2.0 * cfg.y_max, 6)) {
        ys2.push_back(y);
        ys2.push_back(-y);
    }
    double domain = cfg.y_max;
    auto weighted = [&](double y) {
        // the bound claims F(y) <= C uniformly: weight is 1
        return convolution_integral(a, b, y, domain, cfg.quad);
    };
    EstimateReport rep;
    rep.name = "convolution_bound(a+b>1)";
    for (double y : ys) rep.weighted_sup = std::max(rep.weighted_sup, weighted(y));
    domain = 2.0 * cfg.y_max;  // the x-truncation grows with the probe domain
    rep.weighted_sup_grown = rep.weighted_sup;
    for (double y : ys) rep.weighted_sup_grown = std::max(rep.weighted_sup_grown, weighted(y));
    for (double y : ys2) rep.weighted_sup_grown = std::max(rep.weighted_sup_grown, weighted(y));
    rep.stability = rep.weighted_sup > 0.0
                        ? std::abs(rep.weighted_sup_grown - rep.weighted_sup) / rep.weighted_sup
                        : 0.0;
    rep.pass = std::isfinite(rep.weighted_sup_grown) && rep.stability < cfg.stability_threshold;
    rep.probe = "y log grid and x truncation, both doubled for stability";
    if (a + b <= 1.0) {
        rep.note = "hypothesis a+b>1 violated (negative control)";
        rep.pass = false;
    }
    return rep;
}

EstimateReport verify_lemma_41(const ModelParams& pm, const HarnessConfig& cfg) {
    const AdmissibleWindow w = admissible_window(pm.n, pm.mu, pm.p);
    std::string violated;
    if (!(pm.p > w.p_low)) violated = "p <= p0(n+mu)";
    if (!(pm.kappa <= w.kappa2)) violated = "kappa > kappa2";
    if (!(pm.kappa > w.kappa1)) violated = "kappa <= kappa1";
    if (!violated.empty() && !cfg.allow_violation)
        throw std::domain_error("verify_lemma_41: " + violated);

    const double bexp = w.q + 0.5 * pm.mu * (pm.p - 1.0);
    std::vector<double> ys{0.0};
    for (double y : jittered(log_grid(0.1, cfg.y_max, cfg.n_y), cfg)) {
        ys.push_back(y);
        ys.push_back(-y);
    }
    std::vector<double> ys2;
    for (double y : log_grid(cfg.y_max, 2.0 * cfg.y_max, 6)) {
        ys2.push_back(y);
        ys2.push_back(-y);
    }
    auto weighted = [&](double y) {
        return std::pow(bracket(y), pm.kappa) *
               convolution_integral(pm.p * pm.kappa, bexp, y, cfg.y_max, cfg.quad);
    };
    EstimateReport rep = sup_over_y("lemma_4.1_G", cfg, ys, ys2, weighted);
    if (!violated.empty()) {
        rep.note = violated + " (negative control)";
        rep.pass = false;
    }
    return rep;
}

std::vector<EstimateReport> verify_lemmas_42_to_45(const ModelParams& pm,
                                                   const HarnessConfig& cfg) {
    const AdmissibleWindow w = admissible_window(pm.n, pm.mu, pm.p);
    const double q = w.q;
    const double mup = 0.5 * pm.mu * (pm.p - 1.0);

    std::vector<double> ys{0.0};
    for (double y : jittered(log_grid(0.1, cfg.y_max, cfg.n_y), cfg)) ys.push_back(y);
    std::vector<double> ys2 = log_grid(cfg.y_max, 2.0 * cfg.y_max, 6);

    // x in [-y, -y/2] with the inverse square root at x = -y.
    auto half_interval = [&](double y, double ax, double bx) -> double {
        if (y <= 0.0) return 0.0;
        auto f = [&](double x) {
            return std::pow(bracket(x), ax) * std::pow(bracket(x + y), bx) / std::sqrt(x + y);
        };
        return integrate_endpoint_sqrt(f, -y, -0.5 * y, true, false, cfg.quad).value;
    };

    std::vector<EstimateReport> reports;

    struct Regime {
        const char* name;
        bool active;
        double ax, bx;
    };
    const Regime regimes[] = {
        {"lemma_4.2_H(q>=1/2)", q >= 0.5, -pm.kappa * pm.p - mup, -q + 0.5},
        {"lemma_4.3_I(0<=q<1/2)", q >= 0.0 && q < 0.5, -pm.kappa * pm.p - mup + 0.5, -q},
        {"lemma_4.4_J(-1/2<=q<0)", q >= -0.5 && q < 0.0, -pm.kappa * pm.p - mup + 1.0, -q - 0.5},
    };
    for (const Regime& rg : regimes) {
        if (!rg.active) {
            EstimateReport rep;
            rep.name = rg.name;
            rep.applicable = false;
            rep.note = "q = " + std::to_string(q) + " outside this regime; skipped";
            reports.push_back(rep);
            continue;
        }
        auto weighted = [&](double y) {
            return std::pow(bracket(y), pm.kappa) * half_interval(y, rg.ax, rg.bx);
        };
        reports.push_back(sup_over_y(rg.name, cfg, ys, ys2, weighted));
    }

    // three-factor bound, x in [-2y, y]
    auto kfun = [&](double y) -> double {
        if (y <= 0.0) return 0.0;
        auto f = [&](double x) {
            return std::pow(bracket(x - y), -mup) * std::pow(bracket(x + 2.0 * y), -q - 1.0) *
                   std::pow(bracket(x), -pm.kappa * pm.p);
        };
        return integrate_with_breakpoints(f, -2.0 * y, y, {0.0}, false, false, cfg.quad).value;
    };
    auto weighted = [&](double y) { return std::pow(bracket(y), pm.kappa) * kfun(y); };
    reports.push_back(sup_over_y("lemma_4.5_K(3_factors)", cfg, ys, ys2, weighted));
    return reports;
}

namespace {

double phi_pow(double tau, double lam, double kappa, double p) {
    return std::pow(phi_kappa(tau, lam, kappa), p);
}

}  // namespace

double integral_I_gamma(const ModelParams& pm, double gamma, double t, double r,
                        const QuadOptions& opts) {
    if (!(t > 0.0)) return 0.0;
    const AdmissibleWindow w = admissible_window(pm.n, pm.mu, pm.p);
    const double q = w.q;
    const double mup = 0.5 * pm.mu * (pm.p - 1.0);
    const QuadOptions inner = opts.scaled(0.1);

    auto outer = [&](double tau) {
        const double lm = t - tau - r, lp = t - tau + r;
        const double lo = std::abs(lm);
        if (!(lp > lo)) return 0.0;
        auto f = [&](double lam) {
            return std::pow(bracket(lam), -q + 0.5 * pm.p - 0.5 - gamma) *
                   phi_pow(tau, lam, pm.kappa, pm.p) / std::sqrt(lam - lm);
        };
        const bool sing_left = lm >= 0.0;
        return integrate_with_breakpoints(f, lo, lp, {tau}, sing_left, false, inner).value *
               std::pow(bracket(tau), -mup);
    };
    return integrate_with_breakpoints(outer, 0.0, t, {t - r}, false, false, opts, true).value;
}

double integral_J_gamma(const ModelParams& pm, double gamma, double t, double r,
                        const QuadOptions& opts) {
    if (!(t > r)) return 0.0;
    const AdmissibleWindow w = admissible_window(pm.n, pm.mu, pm.p);
    const double q = w.q;
    const double mup = 0.5 * pm.mu * (pm.p - 1.0);
    const QuadOptions inner = opts.scaled(0.1);

    auto outer = [&](double tau) {
        const double lm = t - tau - r;
        if (!(lm > 0.0)) return 0.0;
        auto f = [&](double lam) {
            return std::pow(bracket(lam), 0.5 * pm.p) * phi_pow(tau, lam, pm.kappa, pm.p) /
                   std::sqrt(lm - lam);
        };
        const double in = integrate_with_breakpoints(f, 0.0, lm, {tau}, false, true, inner).value;
        return std::pow(bracket(tau), -mup) * std::pow(bracket(lm), -q - 0.5 - gamma) * in;
    };
    return integrate_endpoint_sqrt(outer, 0.0, t - r, false, true, opts).value;
}

double integral_P_gamma(const ModelParams& pm, double gamma, double t, double r,
                        const QuadOptions& opts) {
    if (!(t > r)) return 0.0;
    const AdmissibleWindow w = admissible_window(pm.n, pm.mu, pm.p);
    const double q = w.q;
    const double mup = 0.5 * pm.mu * (pm.p - 1.0);
    auto f = [&](double tau) {
        const double lm = t - tau - r;
        return std::pow(bracket(tau), -mup) *
               std::pow(bracket(lm), -q + 0.5 * pm.p - 1.0 - gamma) *
               phi_pow(tau, 0.5 * lm, pm.kappa, pm.p);
    };
    return integrate_with_breakpoints(f, 0.0, t - r, {(t - r) / 3.0}, false, false, opts).value;
}

double integral_Q_gamma(const ModelParams& pm, double gamma, double t, double r,
                        const QuadOptions& opts) {
    if (!(t > 0.0)) return 0.0;
    const AdmissibleWindow w = admissible_window(pm.n, pm.mu, pm.p);
    const double q = w.q;
    const double mup = 0.5 * pm.mu * (pm.p - 1.0);
    const double lo = std::max(t - r, 0.0);
    auto f = [&](double tau) {
        const double lm = t - tau - r;  // <= 0 here
        return std::pow(bracket(tau), -mup) *
               std::pow(bracket(lm), -q + 0.5 * pm.p - 1.0 - gamma) *
               phi_pow(tau, -lm, pm.kappa, pm.p);
    };
    return integrate_adaptive(f, lo, t, opts).value;
}

std::vector<EstimateReport> verify_IJPQ(const ModelParams& pm, double gamma,
                                        const HarnessConfig& cfg) {
    const AdmissibleWindow w = admissible_window(pm.n, pm.mu, pm.p);
    std::string violated;
    if (!(w.q >= -0.5 && w.q <= pm.m - 0.5)) violated = "q outside [-1/2, m-1/2]";
    if (!(pm.p < fujita_exponent(pm.mu))) violated = "p >= p_Fuj(mu)";
    if (!violated.empty() && !cfg.allow_violation)
        throw std::domain_error("verify_IJPQ: " + violated);

    ProbeGrid base = ProbeGrid::make(cfg.t_max, cfg.r_max, cfg.n_t, cfg.n_r, 1e-2,
                                     cfg.band_per_decade);
    ProbeGrid grown = ProbeGrid::make(2.0 * cfg.t_max, 2.0 * cfg.r_max, cfg.n_t, cfg.n_r, 1e-2,
                                      cfg.band_per_decade);

    struct Item {
        const char* name;
        double (*eval)(const ModelParams&, double, double, double, const QuadOptions&);
    };
    const Item items[] = {{"I_gamma", integral_I_gamma},
                          {"J_gamma", integral_J_gamma},
                          {"P_gamma", integral_P_gamma},
                          {"Q_gamma", integral_Q_gamma}};

    std::vector<EstimateReport> reports;
    for (const Item& item : items) {
        EstimateReport rep;
        rep.name = std::string(item.name) + "(gamma=" + (gamma == 0.0 ? "0" : "1/2") + ")";
        auto weighted_at = [&](double t, double r) {
            const double val = item.eval(pm, gamma, t, r, cfg.quad);
            return std::pow(bracket(t - r), pm.kappa + gamma) * val;
        };
        base.for_each([&](double t, double r) {
            rep.weighted_sup = std::max(rep.weighted_sup, weighted_at(t, r));
        });
        rep.weighted_sup_grown = rep.weighted_sup;
        grown.for_each([&](double t, double r) {
            if (t <= cfg.t_max && r <= cfg.r_max) return;  // only the new extent
            rep.weighted_sup_grown = std::max(rep.weighted_sup_grown, weighted_at(t, r));
        });
        rep.stability =
            rep.weighted_sup > 0.0
                ? std::abs(rep.weighted_sup_grown - rep.weighted_sup) / rep.weighted_sup
                : 0.0;
        rep.pass =
            std::isfinite(rep.weighted_sup_grown) && rep.stability < cfg.stability_threshold;
        rep.probe = "(t,r) log lattice with diagonal band, extent doubled for stability";
        if (!violated.empty()) {
            // designated failure: the hypothesis gate (the measured sups stay
            // visible; at desk scale these integrals do not blow up under the
            // p-hypothesis violation alone)
            rep.note = "hypothesis violated: " + violated + " (designated failure)";
            rep.pass = false;
        }
        reports.push_back(rep);
    }
    return reports;
}

std::vector<EstimateReport> verify_all(const ModelParams& pm, const HarnessConfig& cfg) {
    std::vector<EstimateReport> reports;
    reports.push_back(verify_convolution_bound(pm.p * pm.kappa,
                                               admissible_window(pm.n, pm.mu, pm.p).q +
                                                   0.5 * pm.mu * (pm.p - 1.0),
                                               cfg));
    reports.front().name = "convolution_bound(a+b>1)";
    reports.push_back(verify_lemma_41(pm, cfg));
    for (auto& rep : verify_lemmas_42_to_45(pm, cfg)) reports.push_back(std::move(rep));
    for (double gamma : {0.0, 0.5})
        for (auto& rep : verify_IJPQ(pm, gamma, cfg)) reports.push_back(std::move(rep));
    return reports;
}

}  // namespace scalewave
