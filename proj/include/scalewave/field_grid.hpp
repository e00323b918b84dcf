#pragma once

#include <memory>
#include <vector>

#include "scalewave/weighted_norms.hpp"

namespace scalewave {

struct GridSpec {
    double t_max = 32.0;
    double r_max = 32.0;
    double r_min = 1e-3;
    int nt = 64;
    int nr = 64;
};

// Tensor-grid field storage between Picard iterates. The grid is uniform in
// (log(1+t), log r); what is stored are the weighted amplitudes
//   W = v / (r^(1-m) <r>^(-1) phi_kappa),   D = d_r v / (r^(-m) phi_kappa),
// so the decay envelope is analytic and off-grid points (including beyond
// t_max/r_max) reuse the clamped amplitude under the phi_kappa ansatz.
class FieldGrid {
public:
    FieldGrid(const GridSpec& spec, int m, double kappa);

    static FieldGrid sample(const WeightedField& v, const GridSpec& spec, int m, double kappa);

    const GridSpec& spec() const { return spec_; }
    int m() const { return m_; }
    double kappa() const { return kappa_; }

    double t_node(int i) const { return t_nodes_[i]; }
    double r_node(int j) const { return r_nodes_[j]; }

    double& amp_value(int i, int j) { return w_[idx(i, j)]; }
    double& amp_deriv(int i, int j) { return d_[idx(i, j)]; }
    double amp_value(int i, int j) const { return w_[idx(i, j)]; }
    double amp_deriv(int i, int j) const { return d_[idx(i, j)]; }

    double envelope_value(double t, double r) const;
    double envelope_deriv(double t, double r) const;

    // Catmull-Rom interpolation of the weighted amplitudes, envelope restored.
    double value(double t, double r) const;
    double r_derivative(double t, double r) const;

    WeightedField field() const;

    // Weighted sup over nodes of |W| + |D| against another grid (same spec):
    // the node part of the X_kappa distance.
    double weighted_sup_diff(const FieldGrid& other) const;

    // Node + diagonal-band estimates of the X_kappa and auxiliary norms.
    WeightedNormReport norm_report() const;

    FieldGrid& add_scaled(const FieldGrid& other, double factor);  // *this += factor*other

private:
    std::size_t idx(int i, int j) const { return static_cast<std::size_t>(i) * nr_ + j; }
    double amp_at(const std::vector<double>& a, double t, double r) const;

    GridSpec spec_;
    int m_;
    double kappa_;
    int nt_, nr_;
    double x0_, dx_;  // log1p(t) axis
    double y0_, dy_;  // log(r) axis
    std::vector<double> t_nodes_, r_nodes_;
    std::vector<double> w_, d_;
};

}  // namespace scalewave
