#include "scalewave/field_grid.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scalewave {

FieldGrid::FieldGrid(const GridSpec& spec, int m, double kappa)
    : spec_(spec), m_(m), kappa_(kappa), nt_(spec.nt), nr_(spec.nr) {
    if (nt_ < 4 || nr_ < 4) throw std::domain_error("FieldGrid: needs at least a 4x4 grid");
    x0_ = 0.0;
    dx_ = std::log1p(spec.t_max) / (nt_ - 1);
    y0_ = std::log(spec.r_min);
    dy_ = (std::log(spec.r_max) - y0_) / (nr_ - 1);
    t_nodes_.resize(nt_);
    r_nodes_.resize(nr_);
    for (int i = 0; i < nt_; ++i) t_nodes_[i] = std::expm1(x0_ + i * dx_);
    for (int j = 0; j < nr_; ++j) r_nodes_[j] = std::exp(y0_ + j * dy_);
    w_.assign(static_cast<std::size_t>(nt_) * nr_, 0.0);
    d_.assign(static_cast<std::size_t>(nt_) * nr_, 0.0);
}

FieldGrid FieldGrid::sample(const WeightedField& v, const GridSpec& spec, int m, double kappa) {
    FieldGrid g(spec, m, kappa);
    for (int i = 0; i < g.nt_; ++i) {
        for (int j = 0; j < g.nr_; ++j) {
            const double t = g.t_nodes_[i], r = g.r_nodes_[j];
            g.amp_value(i, j) = v.value(t, r) / g.envelope_value(t, r);
            g.amp_deriv(i, j) = v.r_derivative(t, r) / g.envelope_deriv(t, r);
        }
    }
    return g;
}

double FieldGrid::envelope_value(double t, double r) const {
    return std::pow(r, 1 - m_) / (1.0 + r) * phi_kappa(t, r, kappa_);
}

double FieldGrid::envelope_deriv(double t, double r) const {
    return std::pow(r, -m_) * phi_kappa(t, r, kappa_);
}

namespace {

// Uniform-grid Catmull-Rom in one variable; clamped end stencils.
inline double catmull_rom(double pm1, double p0, double p1, double p2, double u) {
    return 0.5 * (2.0 * p0 + u * (p1 - pm1) + u * u * (2.0 * pm1 - 5.0 * p0 + 4.0 * p1 - p2) +
                  u * u * u * (3.0 * (p0 - p1) + p2 - pm1));
}

}  // namespace

double FieldGrid::amp_at(const std::vector<double>& a, double t, double r) const {
    // Clamp into the grid box: beyond the edges the amplitude is frozen and
    // only the envelope continues (the decay-ansatz extrapolation).
    double x = (std::log1p(std::max(t, 0.0)) - x0_) / dx_;
    double y = (std::log(std::max(r, spec_.r_min)) - y0_) / dy_;
    x = std::clamp(x, 0.0, nt_ - 1.0);
    y = std::clamp(y, 0.0, nr_ - 1.0);
    int i = std::min(static_cast<int>(x), nt_ - 2);
    int j = std::min(static_cast<int>(y), nr_ - 2);
    const double u = x - i, vfrac = y - j;

    auto node = [&](int ii, int jj) {
        ii = std::clamp(ii, 0, nt_ - 1);
        jj = std::clamp(jj, 0, nr_ - 1);
        return a[idx(ii, jj)];
    };
    double rows[4];
    for (int di = -1; di <= 2; ++di)
        rows[di + 1] = catmull_rom(node(i + di, j - 1), node(i + di, j), node(i + di, j + 1),
                                   node(i + di, j + 2), vfrac);
    return catmull_rom(rows[0], rows[1], rows[2], rows[3], u);
}

double FieldGrid::value(double t, double r) const {
    return amp_at(w_, t, r) * envelope_value(t, r);
}

double FieldGrid::r_derivative(double t, double r) const {
    return amp_at(d_, t, r) * envelope_deriv(t, r);
}

WeightedField FieldGrid::field() const {
    auto self = std::make_shared<FieldGrid>(*this);
    WeightedField f;
    f.value = [self](double t, double r) { return self->value(t, r); };
    f.r_derivative = [self](double t, double r) { return self->r_derivative(t, r); };
    return f;
}

double FieldGrid::weighted_sup_diff(const FieldGrid& other) const {
    if (w_.size() != other.w_.size())
        throw std::invalid_argument("weighted_sup_diff: incompatible grids");
    double sup = 0.0;
    for (std::size_t k = 0; k < w_.size(); ++k)
        sup = std::max(sup, std::abs(w_[k] - other.w_[k]) + std::abs(d_[k] - other.d_[k]));
    return sup;
}

WeightedNormReport FieldGrid::norm_report() const {
    WeightedNormReport rep;
    rep.kappa = kappa_;
    for (int i = 0; i < nt_; ++i) {
        for (int j = 0; j < nr_; ++j) {
            const double r = r_nodes_[j];
            const double W = w_[idx(i, j)], D = d_[idx(i, j)];
            if (!std::isfinite(W) || !std::isfinite(D)) {
                rep.finite = false;
                rep.nonfinite_at = {t_nodes_[i], r};
                continue;
            }
            const double a = std::abs(W) + std::abs(D);
            if (a > rep.norm_Xkappa) {
                rep.norm_Xkappa = a;
                rep.argmax_norm = {t_nodes_[i], r};
            }
            const double b = std::abs(W) * r / (1.0 + r);
            if (b > rep.triple_norm) {
                rep.triple_norm = b;
                rep.argmax_triple = {t_nodes_[i], r};
            }
        }
    }
    // Diagonal band through the interpolant (phi_kappa kinks along t = r).
    for (int i = 0; i < nt_; ++i) {
        const double t = t_nodes_[i];
        for (double off : {0.0, 0.5, -0.5, 2.0, -2.0}) {
            const double r = t - off;
            if (r < spec_.r_min || r > spec_.r_max) continue;
            const double val = value(t, r), der = r_derivative(t, r);
            const double inv_phi = 1.0 / phi_kappa(t, r, kappa_);
            const double rm = std::pow(r, m_);
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
        }
    }
    return rep;
}

FieldGrid& FieldGrid::add_scaled(const FieldGrid& other, double factor) {
    if (w_.size() != other.w_.size())
        throw std::invalid_argument("add_scaled: incompatible grids");
    for (std::size_t k = 0; k < w_.size(); ++k) {
        w_[k] += factor * other.w_[k];
        d_[k] += factor * other.d_[k];
    }
    return *this;
}

}  // namespace scalewave
