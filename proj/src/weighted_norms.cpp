#include "scalewave/weighted_norms.hpp"

#include <cmath>

namespace scalewave {

double phi_kappa(double t, double r, double kappa) {
    return std::pow(1.0 + std::abs(t + r), -0.5) * std::pow(1.0 + std::abs(t - r), -kappa);
}

ProbeGrid ProbeGrid::make(double t_max, double r_max, int nt, int nr, double r_min,
                          int band_per_decade) {
    ProbeGrid g;
    g.t_nodes.reserve(nt);
    for (int i = 0; i < nt; ++i)
        g.t_nodes.push_back(std::expm1(std::log1p(t_max) * i / (nt - 1.0)));
    g.r_nodes.reserve(nr);
    const double ly0 = std::log(r_min), ly1 = std::log(r_max);
    for (int j = 0; j < nr; ++j) g.r_nodes.push_back(std::exp(ly0 + (ly1 - ly0) * j / (nr - 1.0)));

    // Diagonal band: points along t = r with offsets covering <t-r> up to ~4.
    const int decades = std::max(1, static_cast<int>(std::ceil(std::log10(std::max(t_max, 10.0)))));
    const int nd = band_per_decade * decades;
    static const double offsets[] = {0.0, 0.25, -0.25, 1.0, -1.0, 4.0, -4.0};
    for (int i = 0; i < nd; ++i) {
        const double t = std::expm1(std::log1p(t_max) * (i + 0.5) / nd);
        for (double off : offsets) {
            const double r = t - off;
            if (r >= r_min && r <= r_max) g.band_points.emplace_back(t, r);
        }
    }
    return g;
}

WeightedNormReport norm_Xkappa(const WeightedField& v, int m, double kappa,
                               const ProbeGrid& grid) {
    WeightedNormReport rep;
    rep.kappa = kappa;
    grid.for_each([&](double t, double r) {
        const double val = v.value(t, r);
        const double der = v.r_derivative(t, r);
        if (!std::isfinite(val) || !std::isfinite(der)) {
            rep.finite = false;
            rep.nonfinite_at = {t, r};
            return;
        }
        const double inv_phi = 1.0 / phi_kappa(t, r, kappa);
        const double rm = std::pow(r, m);
        const double a = (rm / r * (1.0 + r) * std::abs(val) + rm * std::abs(der)) * inv_phi;
        const double b = rm * std::abs(val) * inv_phi;
        if (a > rep.norm_Xkappa) {
            rep.norm_Xkappa = a;
            rep.argmax_norm = {t, r};
        }
        if (b > rep.triple_norm) {
            rep.triple_norm = b;
            rep.argmax_triple = {t, r};
        }
    });
    return rep;
}

NonlinearityGauge gauge_N(const WeightedField& v, int m, double p, double q, double kappa,
                          double nu, const ProbeGrid& grid) {
    NonlinearityGauge gauge;
    gauge.nu = nu;
    grid.for_each([&](double tau, double lam) {
        const double val = v.value(tau, lam);
        const double der = v.r_derivative(tau, lam);
        if (!std::isfinite(val) || !std::isfinite(der)) return;
        const double av = std::abs(val);
        const double vp = std::pow(av, p);
        const double lam2m = std::pow(lam, 2 * m);
        const double phi_p = std::pow(phi_kappa(tau, lam, kappa), p);
        const double bracket = std::pow(1.0 + lam, q - 0.5 * p + 1.5 + nu);

        const double g0 = lam2m * vp * std::pow(lam, -m - nu) * bracket / phi_p;
        gauge.N0 = std::max(gauge.N0, g0);

        // d_lambda(lambda^(2m)|v|^p); |v|^p is C^1 for p > 1 with derivative
        // p|v|^(p-1) sign(v) d_lambda v, zero where v vanishes.
        const double dnl = av > 0.0 ? p * std::pow(av, p - 1.0) * (val > 0.0 ? 1.0 : -1.0) * der
                                    : 0.0;
        const double dfull = 2.0 * m * lam2m / lam * vp + lam2m * dnl;
        const double g1 =
            std::abs(dfull) * std::pow(lam, -m - nu + 1) * bracket / (1.0 + lam) / phi_p;
        gauge.N1 = std::max(gauge.N1, g1);
    });
    gauge.N1_tilde = gauge.N0 + gauge.N1;
    return gauge;
}

}  // namespace scalewave
