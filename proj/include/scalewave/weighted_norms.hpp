#pragma once

#include <functional>
#include <utility>
#include <vector>

namespace scalewave {

// phi_kappa(t,r) = <t+r>^(-1/2) <t-r>^(-kappa), <y> = 1 + |y|.
double phi_kappa(double t, double r, double kappa);

struct WeightedField {
    std::function<double(double, double)> value;         // v(t,r)
    std::function<double(double, double)> r_derivative;  // d_r v(t,r)
};

// Log-spaced (t,r) probe lattice plus a diagonal band where <t-r> is small.
struct ProbeGrid {
    std::vector<double> t_nodes;
    std::vector<double> r_nodes;
    std::vector<std::pair<double, double>> band_points;

    static ProbeGrid make(double t_max, double r_max, int nt, int nr, double r_min = 1e-3,
                          int band_per_decade = 16);

    template <class F>
    void for_each(F&& fn) const {
        for (double t : t_nodes)
            for (double r : r_nodes) fn(t, r);
        for (const auto& [t, r] : band_points) fn(t, r);
    }
};

struct WeightedNormReport {
    double kappa = 0.0;
    double norm_Xkappa = 0.0;  // sup (r^(m-1)<r>|v| + r^m|d_r v|) / phi_kappa
    double triple_norm = 0.0;  // sup r^m |v| / phi_kappa
    std::pair<double, double> argmax_norm{0, 0};
    std::pair<double, double> argmax_triple{0, 0};
    bool finite = true;
    std::pair<double, double> nonfinite_at{0, 0};
};

// Grid-sup estimates (lower bounds of the true sup) with argmax diagnostics.
WeightedNormReport norm_Xkappa(const WeightedField& v, int m, double kappa,
                               const ProbeGrid& grid);

struct NonlinearityGauge {
    double nu = 0.0;
    double N0 = 0.0;
    double N1 = 0.0;
    double N1_tilde = 0.0;  // N0 + N1
};

// N_j^nu(|v|^p) = sup |d_lambda^j(lambda^(2m)|v|^p)| lambda^(-m-nu+j)
//                     <lambda>^(q - p/2 + 3/2 + nu - j) phi_kappa^(-p).
NonlinearityGauge gauge_N(const WeightedField& v, int m, double p, double q, double kappa,
                          double nu, const ProbeGrid& grid);

}  // namespace scalewave
