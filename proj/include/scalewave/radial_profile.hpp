#pragma once

#include <functional>

namespace scalewave {

// A radial function of r > 0 with derivatives up to order 2 and the power
// metadata the propagator needs (|profile| = O(r^origin_exponent) at 0+ and
// O(r^tail_exponent) at infinity).
struct RadialProfile {
    std::function<double(double)> eval;
    std::function<double(double, int)> eval_deriv;  // order 0, 1 or 2
    double origin_exponent = 0.0;
    double tail_exponent = 0.0;

    double operator()(double r) const { return eval(r); }
    double deriv(double r, int order = 1) const { return eval_deriv(r, order); }
};

RadialProfile zero_profile();

// c * r^a * (1+r)^b with exact derivatives.
RadialProfile power_profile(double c, double a, double b);

// Smooth bump supported on [lo, hi]: amp * exp(-(hi-lo)^2/((r-lo)(hi-r))),
// extended by zero. C^infinity on (0, inf).
RadialProfile bump_profile(double amp, double lo, double hi);

// The canonical Theorem-class data,
//   f(r) = eps r^(1-m) <r>^(-kappa-3/2),  g(r) = eps r^(-m) <r>^(-kappa-3/2).
RadialProfile data_profile_f(int m, double kappa_bar, double epsilon);
RadialProfile data_profile_g(int m, double kappa_bar, double epsilon);

// Largest constant C with |d^j profile| <= C eps r^(base-j) <r>^(-kappa-3/2)
// over a log grid, for j = 0..max_order (sampling check of the data class).
double profile_bound_constant(const RadialProfile& profile, double epsilon, double base_power,
                              double kappa_bar, int max_order);

}  // namespace scalewave
