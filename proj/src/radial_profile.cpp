#include "scalewave/radial_profile.hpp"

#include <cmath>
#include <stdexcept>

namespace scalewave {

RadialProfile zero_profile() {
    RadialProfile p;
    p.eval = [](double) { return 0.0; };
    p.eval_deriv = [](double, int) { return 0.0; };
    p.origin_exponent = 0.0;
    p.tail_exponent = -100.0;
    return p;
}

RadialProfile power_profile(double c, double a, double b) {
    RadialProfile p;
    p.eval = [=](double r) { return c * std::pow(r, a) * std::pow(1.0 + r, b); };
    p.eval_deriv = [=](double r, int order) {
        const double ra = std::pow(r, a);
        const double sb = std::pow(1.0 + r, b);
        switch (order) {
            case 0:
                return c * ra * sb;
            case 1:
                return c * (a * ra / r * sb + b * ra * sb / (1.0 + r));
            case 2:
                return c * (a * (a - 1.0) * ra / (r * r) * sb +
                            2.0 * a * b * ra / r * sb / (1.0 + r) +
                            b * (b - 1.0) * ra * sb / ((1.0 + r) * (1.0 + r)));
            default:
                throw std::domain_error("power_profile: derivative order > 2");
        }
    };
    p.origin_exponent = a;
    p.tail_exponent = a + b;
    return p;
}

RadialProfile bump_profile(double amp, double lo, double hi) {
    if (!(hi > lo)) throw std::domain_error("bump_profile: requires hi > lo");
    const double width2 = (hi - lo) * (hi - lo);
    auto value = [=](double r) -> double {
        if (r <= lo || r >= hi) return 0.0;
        return amp * std::exp(-width2 / ((r - lo) * (hi - r)));
    };
    RadialProfile p;
    p.eval = value;
    p.eval_deriv = [=](double r, int order) -> double {
        if (order == 0) return value(r);
        if (r <= lo || r >= hi) return 0.0;
        const double u = r - lo, w = hi - r;
        const double phi = width2 / (u * w);
        // d/dr of -width2/(u w): width2 (1/u - 1/w) / (u w) ... chain rule kept explicit
        const double dphi = -width2 * (w - u) / (u * u * w * w);
        if (order == 1) return value(r) * (-dphi);
        const double d2phi = width2 * (2.0 * w * w - 2.0 * u * w + 2.0 * u * u) / (u * u * u * w * w * w);
        (void)phi;
        if (order == 2) return value(r) * (dphi * dphi - d2phi);
        throw std::domain_error("bump_profile: derivative order > 2");
    };
    p.origin_exponent = 0.0;
    p.tail_exponent = -100.0;
    return p;
}

RadialProfile data_profile_f(int m, double kappa_bar, double epsilon) {
    return power_profile(epsilon, 1.0 - m, -kappa_bar - 1.5);
}

RadialProfile data_profile_g(int m, double kappa_bar, double epsilon) {
    return power_profile(epsilon, static_cast<double>(-m), -kappa_bar - 1.5);
}

double profile_bound_constant(const RadialProfile& profile, double epsilon, double base_power,
                              double kappa_bar, int max_order) {
    double worst = 0.0;
    for (int j = 0; j <= max_order; ++j) {
        for (int i = 0; i <= 120; ++i) {
            const double r = std::pow(10.0, -3.0 + 6.0 * i / 120.0);
            const double bound =
                epsilon * std::pow(r, base_power - j) * std::pow(1.0 + r, -kappa_bar - 1.5);
            const double v = std::abs(profile.eval_deriv(r, j));
            if (bound > 0.0) worst = std::max(worst, v / bound);
        }
    }
    return worst;
}

}  // namespace scalewave
