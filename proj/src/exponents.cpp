#include "scalewave/exponents.hpp"

#include <cmath>
#include <stdexcept>

namespace scalewave {

double strauss_exponent(double d) {
    if (!(d > 1.0)) throw std::domain_error("strauss_exponent: requires d > 1");
    // (d-1)p^2 - (d+1)p - 2 = 0; the larger root adds two positive terms,
    // so the direct formula is already cancellation-free.
    const double a = d - 1.0;
    const double b = d + 1.0;
    const double disc = std::sqrt(b * b + 8.0 * a);
    return (b + disc) / (2.0 * a);
}

double fujita_exponent(double d) {
    if (!(d > 0.0)) throw std::domain_error("fujita_exponent: requires d > 0");
    return 1.0 + 2.0 / d;
}

static void check_even_dimension(int n) {
    if (n < 4 || n % 2 != 0)
        throw std::domain_error("requires an even spatial dimension n >= 4");
}

double mu_upper_bound(int n) {
    check_even_dimension(n);
    const double nn = n;
    return 0.5 * (nn - 1.0) * (1.0 + std::sqrt((nn + 7.0) / (nn - 1.0)));
}

SecondaryExponents secondary_exponents(int n, double mu) {
    if (n < 1) throw std::domain_error("secondary_exponents: requires n >= 1");
    if (mu < 0.0) throw std::domain_error("secondary_exponents: requires mu >= 0");
    SecondaryExponents s;
    s.p2 = std::max(fujita_exponent(n), strauss_exponent(n + 2.0));
    s.p_crit = std::max(fujita_exponent(n + 0.5 * mu - 1.0), strauss_exponent(n + mu));
    s.m_tilde = (3.0 * n * n - 5.0 * n + 2.0) / n;
    return s;
}

double blowup_range_exponent(int n, double mu, double delta) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::domain_error("blowup_range_exponent: requires delta in (0,1]");
    return std::max(fujita_exponent(n + 0.5 * (mu - 1.0) - 0.5 * std::sqrt(delta)),
                    strauss_exponent(n + mu));
}

AdmissibleWindow admissible_window(int n, double mu) {
    check_even_dimension(n);
    AdmissibleWindow w;
    w.p_low = strauss_exponent(n + mu);
    w.p_high = std::min(fujita_exponent(0.5 * (n + mu - 1.0)), fujita_exponent(mu));
    w.kappa1 = w.kappa2 = w.q = std::nan("");
    return w;
}

AdmissibleWindow admissible_window(int n, double mu, double p) {
    AdmissibleWindow w = admissible_window(n, mu);
    if (!(p > 1.0)) throw std::domain_error("admissible_window: requires p > 1");
    w.q = 0.5 * (n - 1.0) * p - 0.5 * (n + 1.0);
    w.kappa1 = 2.0 / (p - 1.0) - 0.5 * (n + mu - 1.0);
    w.kappa2 = 0.5 * (n + mu - 1.0) * (p - 1.0) - 1.0;
    return w;
}

ModelParams ModelParams::make(int n, double mu, double p, double kappa, double epsilon) {
    check_even_dimension(n);
    if (mu < 1.0) throw std::domain_error("ModelParams: mu < 1 has no real nu with delta = 1");
    ModelParams pm;
    pm.n = n;
    pm.m = (n - 2) / 2;
    pm.mu = mu;
    pm.nu = 0.5 * std::sqrt((mu - 1.0) * (mu - 1.0) - 1.0);
    pm.delta = (mu - 1.0) * (mu - 1.0) - 4.0 * pm.nu * pm.nu;
    AdmissibleWindow w = admissible_window(n, mu);
    pm.p = p > 0.0 ? p : std::sqrt(w.p_low * w.p_high);
    w = admissible_window(n, mu, pm.p);
    pm.kappa = kappa > 0.0 ? kappa : 0.5 * (w.kappa1 + w.kappa2);
    pm.epsilon = epsilon;
    return pm;
}

std::vector<std::string> validate(const ModelParams& pm) {
    std::vector<std::string> violations;
    if (pm.n < 4 || pm.n % 2 != 0) violations.push_back("n not an even integer >= 4");
    if (pm.m != (pm.n - 2) / 2) violations.push_back("m != (n-2)/2");
    if (std::abs(pm.delta - 1.0) > 1e-12) violations.push_back("delta != 1");
    if (pm.mu < 2.0) violations.push_back("mu < 2");
    const double M = mu_upper_bound(pm.n);
    if (pm.mu >= M) violations.push_back("mu >= M(n)");
    const AdmissibleWindow w = admissible_window(pm.n, pm.mu, pm.p > 1.0 ? pm.p : 1.5);
    if (!(pm.p > w.p_low)) violations.push_back("p <= p0(n+mu)");
    if (!(pm.p < w.p_high)) violations.push_back("p >= min(p_Fuj((n+mu-1)/2), p_Fuj(mu))");
    if (pm.p > w.p_low && pm.p < w.p_high) {
        if (!(pm.kappa > w.kappa1)) violations.push_back("kappa <= kappa1");
        if (!(pm.kappa <= w.kappa2)) violations.push_back("kappa > kappa2");
        if (!(w.kappa2 < pm.m + 0.5)) violations.push_back("kappa2 >= m+1/2");
    }
    if (!(pm.epsilon > 0.0)) violations.push_back("epsilon <= 0");
    return violations;
}

}  // namespace scalewave
