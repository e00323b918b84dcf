#pragma once

#include <string>
#include <vector>

namespace scalewave {

/// Strauss exponent p0(d): positive root of (d-1)p^2 - (d+1)p - 2 = 0.
double strauss_exponent(double d);

/// Fujita exponent 1 + 2/d.
double fujita_exponent(double d);

/// M(n) = (n-1)/2 * (1 + sqrt((n+7)/(n-1))), the admissible ceiling for mu.
double mu_upper_bound(int n);

struct SecondaryExponents {
    double p2;       // max(p_Fuj(n), p0(n+2))
    double p_crit;   // max(p_Fuj(n + mu/2 - 1), p0(n+mu))
    double m_tilde;  // (3n^2 - 5n + 2)/n
};
SecondaryExponents secondary_exponents(int n, double mu);

// Informational only: the blow-up range endpoint for general delta in (0,1],
// max(p_Fuj(n + (mu-1)/2 - sqrt(delta)/2), p0(n+mu)). Criticality is open.
double blowup_range_exponent(int n, double mu, double delta);

struct AdmissibleWindow {
    double p_low;    // p0(n+mu)
    double p_high;   // min(p_Fuj((n+mu-1)/2), p_Fuj(mu))
    double kappa1;   // 2/(p-1) - (n+mu-1)/2
    double kappa2;   // (n+mu-1)/2*(p-1) - 1
    double q;        // (n-1)/2*p - (n+1)/2
};

/// The p-window alone (kappa fields require a p; they are NaN here).
AdmissibleWindow admissible_window(int n, double mu);

/// The full window for a concrete p inside (p_low, p_high).
AdmissibleWindow admissible_window(int n, double mu, double p);

struct ModelParams {
    int n = 4;          // even spatial dimension >= 4
    int m = 1;          // (n-2)/2
    double mu = 2.0;    // damping coefficient
    double nu = 0.0;    // mass coefficient, derived from delta = 1
    double delta = 1.0; // (mu-1)^2 - 4 nu^2
    double p = 0.0;     // nonlinearity exponent
    double kappa = 0.0; // weight exponent
    double epsilon = 1e-3;

    // nu is always derived from (mu, delta=1); p and kappa default to the
    // geometric p-midpoint and the kappa-midpoint when passed <= 0.
    static ModelParams make(int n, double mu, double p = 0.0, double kappa = 0.0,
                            double epsilon = 1e-3);
};

/// Empty iff all Theorem-level hypotheses hold; otherwise one entry per
/// violated condition, named ("mu >= M(n)", "p <= p0(n+mu)", ...).
std::vector<std::string> validate(const ModelParams& params);

}  // namespace scalewave
