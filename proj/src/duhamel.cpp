#include "scalewave/duhamel.hpp"

#include <cmath>
#include <stdexcept>

namespace scalewave {

RadialProfile nonlinearity_profile(const WeightedField& v, double tau, double p, int m) {
    RadialProfile g;
    g.eval = [=](double lam) { return std::pow(std::abs(v.value(tau, lam)), p); };
    g.eval_deriv = [=](double lam, int order) -> double {
        const double val = v.value(tau, lam);
        if (order == 0) return std::pow(std::abs(val), p);
        if (order != 1) throw std::domain_error("nonlinearity_profile: order > 1 unsupported");
        if (val == 0.0) return 0.0;
        return p * std::pow(std::abs(val), p - 1.0) * (val > 0.0 ? 1.0 : -1.0) *
               v.r_derivative(tau, lam);
    };
    g.origin_exponent = (1 - m) * p;
    g.tail_exponent = -p;
    return g;
}

ThetaParts duhamel_W_parts(const WeightedField& v, const ModelParams& pm, double s, double r,
                           double tau, const QuadOptions& opts, bool with_w34, bool with_w56) {
    const RadialProfile g = nonlinearity_profile(v, tau, pm.p, pm.m);
    return theta_w_parts(g, pm.m, s, r, opts, with_w34, with_w56);
}

namespace {

double mu_weight(double tau, const ModelParams& pm) {
    return std::pow(1.0 + tau, -0.5 * pm.mu * (pm.p - 1.0));
}

// The tau integrand carries a half-power cusp where lambda_- = t - tau - r
// crosses zero; split there and substitute on both sides.
template <class F>
PairQuadResult tau_integral_pair(F&& f, double t, double r, const QuadOptions& opts) {
    PairQuadResult total;
    if (!(t > 0.0)) return total;
    auto accumulate = [&](const PairQuadResult& part) {
        total.first += part.first;
        total.second += part.second;
        total.error += part.error;
        total.evals += part.evals;
        total.converged = total.converged && part.converged;
    };
    auto sub_left = [&](double lo, double hi) {
        const double smax = std::sqrt(hi - lo);
        accumulate(integrate_adaptive_pair(
            [&](double s) {
                auto val = f(lo + s * s);
                val.first *= 2.0 * s;
                val.second *= 2.0 * s;
                return val;
            },
            0.0, smax, opts));
    };
    auto sub_right = [&](double lo, double hi) {
        const double smax = std::sqrt(hi - lo);
        accumulate(integrate_adaptive_pair(
            [&](double s) {
                auto val = f(hi - s * s);
                val.first *= 2.0 * s;
                val.second *= 2.0 * s;
                return val;
            },
            0.0, smax, opts));
    };
    const double split = t - r;
    if (split > 0.0) {
        accumulate(integrate_adaptive_pair(f, 0.0, 0.5 * split, opts));
        sub_right(0.5 * split, split);
        sub_left(split, 0.5 * (split + t));
        accumulate(integrate_adaptive_pair(f, 0.5 * (split + t), t, opts));
    } else {
        accumulate(integrate_adaptive_pair(f, 0.0, t, opts));
    }
    return total;
}

}  // namespace

LPointValue apply_L_point(const WeightedField& v, const ModelParams& pm, double t, double r,
                          const QuadOptions& opts) {
    LPointValue out;
    if (!(r > 0.0)) throw std::domain_error("apply_L_point: requires r > 0");
    if (t <= 0.0) return out;

    const PropagatorConstants pc = PropagatorConstants::make(pm.n);
    const int m = pm.m;
    const double inv_cn = 1.0 / pc.c_n;
    const double inv_r2m = std::pow(r, -2 * m);

    // Far from the cone w1 and w2 cancel strongly, so the tau level would
    // chase inner-quadrature noise forever: cap the panel budget per level.
    QuadOptions w_opts = opts;
    w_opts.max_panels = std::min<std::size_t>(opts.max_panels, 40);
    QuadOptions tau_opts = opts;
    tau_opts.max_panels = 16;

    auto integrand = [&](double tau) {
        const RadialProfile g = nonlinearity_profile(v, tau, pm.p, m);
        const ThetaParts parts = theta_w_parts(g, m, t - tau, r, w_opts, false, true);
        const double w = mu_weight(tau, pm);
        return std::pair{w * (parts.w1 + parts.w2), w * 0.5 * (parts.w5 + parts.w6)};
    };
    const PairQuadResult res = tau_integral_pair(integrand, t, r, tau_opts);
    out.value = inv_cn * inv_r2m * res.first;
    out.r_derivative = inv_cn * inv_r2m * res.second - 2.0 * m / r * out.value;
    return out;
}

FieldGrid apply_L(const WeightedField& v, const ModelParams& pm, const GridSpec& spec,
                  double kappa, const QuadOptions& opts) {
    FieldGrid out(spec, pm.m, kappa);
    for (int i = 0; i < spec.nt; ++i) {
        const double t = out.t_node(i);
        for (int j = 0; j < spec.nr; ++j) {
            const double r = out.r_node(j);
            const LPointValue lv = apply_L_point(v, pm, t, r, opts);
            out.amp_value(i, j) = lv.value / out.envelope_value(t, r);
            out.amp_deriv(i, j) = lv.r_derivative / out.envelope_deriv(t, r);
        }
    }
    return out;
}

WeightedField dissipative_transform(const WeightedField& field, double mu, bool inverse) {
    const double sign = inverse ? -1.0 : 1.0;
    WeightedField out;
    out.value = [=](double t, double r) {
        return std::pow(1.0 + t, sign * 0.5 * mu) * field.value(t, r);
    };
    out.r_derivative = [=](double t, double r) {
        return std::pow(1.0 + t, sign * 0.5 * mu) * field.r_derivative(t, r);
    };
    return out;
}

PicardResult picard_solve(const ModelParams& pm, double kappa_bar, const PicardOptions& opts) {
    {
        ModelParams check = pm;
        check.kappa = kappa_bar;
        auto violations = validate(check);
        if (pm.epsilon == 0.0)  // zero data solves trivially
            std::erase(violations, "epsilon <= 0");
        if (!violations.empty()) {
            std::string msg = "picard_solve: inadmissible parameters:";
            for (const auto& v : violations) msg += " [" + v + "]";
            throw std::domain_error(msg);
        }
    }

    const RadialProfile f = data_profile_f(pm.m, kappa_bar, pm.epsilon);
    const RadialProfile g = data_profile_g(pm.m, kappa_bar, pm.epsilon);
    const LinearSolution lin = v0_solution(f, g, pm.n, opts.quad);

    WeightedField lin_field{lin.value, lin.r_derivative};
    FieldGrid v0_grid = pm.epsilon == 0.0
                            ? FieldGrid(opts.grid, pm.m, kappa_bar)
                            : FieldGrid::sample(lin_field, opts.grid, pm.m, kappa_bar);

    PicardResult result{PicardTrace{}, v0_grid, v0_grid};
    FieldGrid current = v0_grid;

    {
        PicardIterate it0;
        const WeightedNormReport rep = current.norm_report();
        it0.norm_X = rep.norm_Xkappa;
        it0.triple_norm = rep.triple_norm;
        result.trace.iterates.push_back(it0);
    }

    if (pm.epsilon == 0.0) {
        // zero data: the fixed point is identically zero after one look
        result.trace.converged = true;
        result.trace.status = "zero data";
        result.field = current;
        return result;
    }

    int rising = 0;
    for (int k = 1; k <= opts.max_iter; ++k) {
        FieldGrid next = v0_grid;
        FieldGrid lgrid = apply_L(current.field(), pm, opts.grid, kappa_bar, opts.quad);
        next.add_scaled(lgrid, 1.0);

        PicardIterate it;
        const WeightedNormReport rep = next.norm_report();
        it.norm_X = rep.norm_Xkappa;
        it.triple_norm = rep.triple_norm;
        it.increment = next.weighted_sup_diff(current);
        const double prev_inc = result.trace.iterates.back().increment;
        it.ratio = (k >= 2 && prev_inc > 0.0) ? it.increment / prev_inc : 0.0;
        result.trace.iterates.push_back(it);

        rising = (k >= 2 && it.ratio > 1.0) ? rising + 1 : 0;
        current = std::move(next);

        if (rising >= 3) {
            result.trace.diverged = true;
            result.trace.status = "diverged: increment ratio > 1 for 3 consecutive steps";
            break;
        }
        if (it.increment < opts.tol) {
            // residual check ||v - v0 - Lv|| on the candidate fixed point
            FieldGrid lfinal = apply_L(current.field(), pm, opts.grid, kappa_bar, opts.quad);
            FieldGrid resid = current;
            resid.add_scaled(v0_grid, -1.0);
            resid.add_scaled(lfinal, -1.0);
            FieldGrid zero(opts.grid, pm.m, kappa_bar);
            result.trace.residual = resid.weighted_sup_diff(zero);
            if (result.trace.residual < 10.0 * opts.tol) {
                result.trace.converged = true;
                result.trace.status = "converged";
                break;
            }
        }
    }
    if (!result.trace.converged && !result.trace.diverged)
        result.trace.status = "max_iter reached";
    result.field = current;
    return result;
}

}  // namespace scalewave
