#pragma once

#include <string>
#include <vector>

#include "scalewave/exponents.hpp"
#include "scalewave/field_grid.hpp"
#include "scalewave/propagator.hpp"
#include "scalewave/weighted_norms.hpp"

namespace scalewave {

// |v(tau,.)|^p as a radial profile of lambda, with the chain-rule lambda
// derivative (zero where v vanishes; |.|^p is C^1 for p > 1).
RadialProfile nonlinearity_profile(const WeightedField& v, double tau, double p, int m);

struct LPointValue {
    double value = 0.0;
    double r_derivative = 0.0;
};

// Lv(t,r) = c_n^{-1} int_0^t <tau>^{-mu(p-1)/2} Theta(|v(tau,.)|^p)(t-tau,r) dtau,
// values through W1+W2 and the r-derivative through W5+W6.
LPointValue apply_L_point(const WeightedField& v, const ModelParams& pm, double t, double r,
                          const QuadOptions& opts = {});

FieldGrid apply_L(const WeightedField& v, const ModelParams& pm, const GridSpec& spec,
                  double kappa, const QuadOptions& opts = {});

// W_i(s,r;tau) building blocks with g = |v(tau,.)|^p (Theta parts at (s,r)).
ThetaParts duhamel_W_parts(const WeightedField& v, const ModelParams& pm, double s, double r,
                           double tau, const QuadOptions& opts = {}, bool with_w34 = false,
                           bool with_w56 = false);

// v = <t>^(mu/2) u (forward) and u = <t>^(-mu/2) v (inverse).
WeightedField dissipative_transform(const WeightedField& field, double mu, bool inverse);

struct PicardOptions {
    GridSpec grid;
    QuadOptions quad{1e-15, 3e-4, 240};  // economical defaults for the nested sweeps
    double tol = 1e-6;
    int max_iter = 12;
};

struct PicardIterate {
    double norm_X = 0.0;
    double triple_norm = 0.0;
    double increment = 0.0;  // weighted-sup distance to the previous iterate
    double ratio = 0.0;      // increment_k / increment_{k-1}
};

struct PicardTrace {
    std::vector<PicardIterate> iterates;
    bool converged = false;
    bool diverged = false;
    double residual = 0.0;  // ||v - v0 - Lv|| weighted sup after the last iterate
    std::string status;
};

struct PicardResult {
    PicardTrace trace;
    FieldGrid field;    // final v
    FieldGrid v0_grid;  // sampled linear part
};

PicardResult picard_solve(const ModelParams& pm, double kappa_bar, const PicardOptions& opts);

}  // namespace scalewave
