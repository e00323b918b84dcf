#pragma once

#include <functional>

#include "scalewave/kernels.hpp"
#include "scalewave/quadrature.hpp"
#include "scalewave/radial_profile.hpp"

namespace scalewave {

struct PropagatorConstants {
    int n;
    int m;
    double c_n;  // sqrt(pi) Gamma((n-1)/2)

    static PropagatorConstants make(int n);
    // Equivalent closed form pi * 2^(-(n-2)/2) * (n-3)!!; must agree with c_n.
    double c_n_double_factorial() const;
};

// The three kernel representations around Theta(g); w1/w2 hold for all
// t >= 0, r > 0, the others for t != r.
//   w12_sum =   r^(2m) Theta(g)        = w1 + w2
//   w34_sum = 2 r^(2m) Theta(g)        = w3 + w4
//   w56_sum = d_r(2 r^(2m) Theta(g))   = w5 + w6
struct ThetaParts {
    double w1 = 0, w2 = 0, w3 = 0, w4 = 0, w5 = 0, w6 = 0;
};

ThetaParts theta_w_parts(const RadialProfile& g, int m, double t, double r,
                         const QuadOptions& opts = {}, bool with_w34 = true,
                         bool with_w56 = true);

double theta_w12(const RadialProfile& g, int m, double t, double r, const QuadOptions& opts = {});
double theta_w34(const RadialProfile& g, int m, double t, double r, const QuadOptions& opts = {});

// (w5+w6)/(2 r^(2m)); full d_r Theta needs the -2m/r Theta(g) correction.
double theta_w56_over(const RadialProfile& g, int m, double t, double r,
                      const QuadOptions& opts = {});
double theta_r_derivative(const RadialProfile& g, int m, double t, double r,
                          const QuadOptions& opts = {});

struct LinearSolution {
    std::function<double(double, double)> value;         // v0(t,r)
    std::function<double(double, double)> r_derivative;  // d_r v0(t,r)
};

// v0 = c_n^{-1} (Theta(g) + d_t Theta(f)); the time derivative uses
// Richardson-extrapolated central differences on the odd-in-t extension.
LinearSolution v0_solution(const RadialProfile& f, const RadialProfile& g, int n,
                           const QuadOptions& opts = {});

}  // namespace scalewave
