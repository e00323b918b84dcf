#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "scalewave/exponents.hpp"
#include "scalewave/quadrature.hpp"

namespace scalewave {

struct EstimateReport {
    std::string name;
    double weighted_sup = 0.0;          // sup over the probe set of LHS x weight
    double weighted_sup_grown = 0.0;    // same with the probe domain doubled
    double stability = 0.0;             // relative change under domain growth
    std::string probe;                  // probe-set descriptor
    bool applicable = true;             // false when the q-regime excludes it
    bool pass = false;                  // finite and stability < threshold
    std::string note;
};

struct HarnessConfig {
    double y_max = 1e3;        // base half-extent of the y probe grid
    int n_y = 25;              // probe points per decade-ish sweep
    double t_max = 500.0;      // base (t,r) lattice extent for I/J/P/Q
    double r_max = 500.0;
    int n_t = 12;
    int n_r = 10;
    int band_per_decade = 16;
    double stability_threshold = 0.10;
    bool allow_violation = false;  // run anyway when hypotheses fail (negative controls)
    std::uint64_t seed = 0;        // probe-point jitter
    double jitter = 0.0;
    QuadOptions quad{1e-14, 1e-7, 2000};
};

// int <x>^-a <x+y>^-b dx over a truncated domain with analytic tail bounds;
// sup over a +-log y grid. Requires a,b >= 0 and a+b > 1 (rejected otherwise
// unless cfg.allow_violation, which is the designated negative control).
EstimateReport verify_convolution_bound(double a, double b, const HarnessConfig& cfg = {});

// <y>^kappa int <x>^(-p kappa) <x+y>^(-q-mu(p-1)/2) dx bounded.
EstimateReport verify_lemma_41(const ModelParams& pm, const HarnessConfig& cfg = {});

// The three singular-integral bounds (q >= 1/2, 0 <= q < 1/2, -1/2 <= q < 0)
// plus the three-factor bound; inapplicable q-regimes are skipped with notice.
std::vector<EstimateReport> verify_lemmas_42_to_45(const ModelParams& pm,
                                                   const HarnessConfig& cfg = {});

// I_gamma, J_gamma, P_gamma, Q_gamma weighted by <t-r>^(kappa+gamma).
std::vector<EstimateReport> verify_IJPQ(const ModelParams& pm, double gamma,
                                        const HarnessConfig& cfg = {});

// Everything on one configuration (the CLI `verify-estimates` payload).
std::vector<EstimateReport> verify_all(const ModelParams& pm, const HarnessConfig& cfg = {});

// The four I/J/P/Q integrals themselves (exposed for tests).
double integral_I_gamma(const ModelParams& pm, double gamma, double t, double r,
                        const QuadOptions& opts);
double integral_J_gamma(const ModelParams& pm, double gamma, double t, double r,
                        const QuadOptions& opts);
double integral_P_gamma(const ModelParams& pm, double gamma, double t, double r,
                        const QuadOptions& opts);
double integral_Q_gamma(const ModelParams& pm, double gamma, double t, double r,
                        const QuadOptions& opts);

}  // namespace scalewave
