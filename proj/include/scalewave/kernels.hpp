#pragma once

#include <vector>

#include "scalewave/quadrature.hpp"

namespace scalewave {

// One closed-form summand of H_j:
//   coef * rho^pow_rho * (rho - t)^pow_shift * (r^2 - (rho-t)^2)^(quad_twice/2)
// quad_twice stores twice the half-integer quadratic exponent so term lists
// can be combined by exact integer keys.
struct KernelTerm {
    double coef;
    int pow_rho;     // <= 0
    int pow_shift;   // >= 0
    int quad_twice;  // odd; exponent of (r^2 - (rho-t)^2) is quad_twice/2

    double pow_quad() const { return 0.5 * quad_twice; }
};

struct KernelSum {
    int m = 1;
    int j = 0;
    int r_prefactor = 0;  // evaluation is multiplied by r^r_prefactor
    std::vector<KernelTerm> terms;

    int min_quad_twice() const;
};

// H_j = ((1/(2 rho) d/drho)^*)^j (r^2 - (rho-t)^2)^(m-1/2), built by term
// rewriting; results are cached per (m, j) (thread-safe, idempotent insert).
const KernelSum& build_Hj(int m, int j);

// Term list of (1/r) * d/dr H_j, i.e. the stored terms carry coef*2*pow_quad
// and quad-1; the r factor is restored through r_prefactor at evaluation.
KernelSum kernel_sum_r_derivative(const KernelSum& ks);

double eval_Hj(const KernelSum& ks, double rho, double t, double r);

// K_j(lambda,t,r) = int_lambda^{t+r} H_j(rho,t,r)/sqrt(rho^2-lambda^2) drho
// for |t-r| <= lambda <= t+r.
double eval_Kj(const KernelSum& ks, double lambda, double t, double r,
               const QuadOptions& opts = {});

// Ktilde_j(lambda,t,r) = int_{t-r}^{t+r} H_j/sqrt(rho^2-lambda^2) drho for
// t > r > 0 and 0 <= lambda < t-r.
double eval_Ktildej(const KernelSum& ks, double lambda, double t, double r,
                    const QuadOptions& opts = {});

// d/dr K_{m-1} and d/dr Ktilde_{m-1}; analytic (differentiated term list plus
// vanishing moving-limit boundary terms, valid for level <= m-1).
double eval_dr_Kj(const KernelSum& ks_level_m1, double lambda, double t, double r,
                  const QuadOptions& opts = {});
double eval_dr_Ktildej(const KernelSum& ks_level_m1, double lambda, double t, double r,
                       const QuadOptions& opts = {});

// d/dlambda K_j(lambda,t,r) = lambda int_lambda^{t+r} G_j/sqrt(rho^2-lambda^2)
// with G_j = H_j'/rho - H_j/rho^2 (term-list closed); level <= m-1 keeps the
// differentiated quadratic power integrable.
double eval_dlambda_Kj(const KernelSum& ks_level_m1, double lambda, double t, double r,
                       const QuadOptions& opts = {});

}  // namespace scalewave
