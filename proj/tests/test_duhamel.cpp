#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "scalewave/duhamel.hpp"

using namespace scalewave;

namespace {

const ModelParams& params() {
    static ModelParams pm = ModelParams::make(4, 2.0, 1.72, 0.6, 1e-3);
    return pm;
}

// the canonical decay shape r^(1-m)<r>^-1 phi_kappa with matching derivative
WeightedField canonical_field(int m, double kappa, double amp) {
    WeightedField f;
    f.value = [=](double t, double r) {
        return amp * std::pow(r, 1 - m) / (1.0 + r) * phi_kappa(t, r, kappa);
    };
    f.r_derivative = [=](double t, double r) {
        const double h = 1e-5 * std::max(r, 0.1);
        return (f.value(t, r + h) - f.value(t, r - h)) / (2.0 * h);
    };
    return f;
}

}  // namespace

TEST_CASE("phi_kappa values") {
    CHECK(phi_kappa(1.0, 1.0, 0.7) == doctest::Approx(std::pow(3.0, -0.5)));
    CHECK(phi_kappa(0.0, 1.0, 0.5) == doctest::Approx(0.5));
    CHECK(phi_kappa(3.0, 1.0, 0.8) ==
          doctest::Approx(std::pow(5.0, -0.5) * std::pow(3.0, -0.8)).epsilon(1e-12));
}

TEST_CASE("norm of the zero field is zero") {
    WeightedField z{[](double, double) { return 0.0; }, [](double, double) { return 0.0; }};
    const ProbeGrid grid = ProbeGrid::make(16.0, 16.0, 12, 12);
    const WeightedNormReport rep = norm_Xkappa(z, 1, 0.6, grid);
    CHECK(rep.norm_Xkappa == 0.0);
    CHECK(rep.triple_norm == 0.0);
    CHECK(rep.finite);
}

TEST_CASE("canonical field saturates the weight with a stable constant") {
    const ProbeGrid grid = ProbeGrid::make(16.0, 16.0, 16, 16);
    const ProbeGrid fine = ProbeGrid::make(16.0, 16.0, 32, 32);
    const WeightedField v = canonical_field(1, 0.6, 1.0);
    const WeightedNormReport a = norm_Xkappa(v, 1, 0.6, grid);
    const WeightedNormReport b = norm_Xkappa(v, 1, 0.6, fine);
    CHECK(a.triple_norm <= a.norm_Xkappa);
    CHECK(b.norm_Xkappa >= 1.0);          // the value part alone reaches 1 at r -> inf
    CHECK(b.norm_Xkappa < 4.0);           // plus an O(1) derivative term
    CHECK(std::abs(b.norm_Xkappa - a.norm_Xkappa) / a.norm_Xkappa < 0.10);
}

TEST_CASE("norm monotonicity in kappa on phi-decaying fields") {
    const ProbeGrid grid = ProbeGrid::make(16.0, 16.0, 16, 16);
    const WeightedField v = canonical_field(1, 0.6, 1.0);
    const double n1 = norm_Xkappa(v, 1, 0.6, grid).norm_Xkappa;
    const double n2 = norm_Xkappa(v, 1, 0.75, grid).norm_Xkappa;
    CHECK(n2 >= n1);
}

TEST_CASE("gauge homogeneity and zero field") {
    const ModelParams& pm = params();
    const AdmissibleWindow w = admissible_window(pm.n, pm.mu, pm.p);
    const ProbeGrid grid = ProbeGrid::make(16.0, 16.0, 12, 12);
    WeightedField z{[](double, double) { return 0.0; }, [](double, double) { return 0.0; }};
    const double nu = pm.m - (pm.m - 1) * pm.p;
    CHECK(gauge_N(z, pm.m, pm.p, w.q, pm.kappa, nu, grid).N1_tilde == 0.0);

    const WeightedField v = canonical_field(pm.m, pm.kappa, 1.0);
    const WeightedField v3 = canonical_field(pm.m, pm.kappa, 3.0);
    const NonlinearityGauge g1 = gauge_N(v, pm.m, pm.p, w.q, pm.kappa, nu, grid);
    const NonlinearityGauge g3 = gauge_N(v3, pm.m, pm.p, w.q, pm.kappa, nu, grid);
    CHECK(g3.N0 == doctest::Approx(std::pow(3.0, pm.p) * g1.N0).epsilon(1e-10));
    CHECK(g3.N1 == doctest::Approx(std::pow(3.0, pm.p) * g1.N1).epsilon(1e-10));
    CHECK(g1.N1_tilde == doctest::Approx(g1.N0 + g1.N1));
}

TEST_CASE("N0 gauge controlled by the norm to the p-th power") {
    // with nu = m-(m-1)p the <lambda> exponent closes exactly on the
    // canonical shape, so N0 <= C ||v||^p with C stable under refinement
    const ModelParams& pm = params();
    const AdmissibleWindow w = admissible_window(pm.n, pm.mu, pm.p);
    const double nu = pm.m - (pm.m - 1) * pm.p;
    const WeightedField v = canonical_field(pm.m, pm.kappa, 0.7);
    const ProbeGrid grid = ProbeGrid::make(16.0, 16.0, 16, 16);
    const ProbeGrid fine = ProbeGrid::make(16.0, 16.0, 32, 32);
    const double norm = norm_Xkappa(v, pm.m, pm.kappa, fine).norm_Xkappa;
    const double c1 = gauge_N(v, pm.m, pm.p, w.q, pm.kappa, nu, grid).N0 / std::pow(norm, pm.p);
    const double c2 = gauge_N(v, pm.m, pm.p, w.q, pm.kappa, nu, fine).N0 / std::pow(norm, pm.p);
    CHECK(std::isfinite(c2));
    CHECK(c2 > 0.0);
    CHECK(std::abs(c2 - c1) / c1 < 0.15);
}

TEST_CASE("nu thresholds from the admissible window") {
    for (int n : {4, 6, 8}) {
        const double M = mu_upper_bound(n);
        const int m = (n - 2) / 2;
        for (double frac : {0.0, 0.5, 0.95}) {
            const double mu = 2.0 + frac * (M - 2.0);
            const AdmissibleWindow w = admissible_window(n, mu);
            for (double p : {w.p_low * 1.001, std::sqrt(w.p_low * w.p_high), w.p_high * 0.999}) {
                CHECK(m - (m - 1) * p > -1.0);      // nu_1
                CHECK(m + 1 - (m - 1) * p > -1.0);  // nu_2
            }
        }
    }
}

TEST_CASE("dissipative transform: round trip, t=0, derivative scaling") {
    const WeightedField v = canonical_field(1, 0.6, 2.0);
    const WeightedField u = dissipative_transform(v, 2.0, true);
    const WeightedField back = dissipative_transform(u, 2.0, false);
    for (auto [t, r] : {std::pair{0.0, 1.0}, {3.0, 0.5}, {10.0, 10.0}}) {
        CHECK(back.value(t, r) == doctest::Approx(v.value(t, r)).epsilon(1e-14));
        CHECK(back.r_derivative(t, r) == doctest::Approx(v.r_derivative(t, r)).epsilon(1e-14));
    }
    CHECK(u.value(0.0, 1.0) == doctest::Approx(v.value(0.0, 1.0)).epsilon(1e-15));
    CHECK(u.value(3.0, 1.0) == doctest::Approx(std::pow(4.0, -1.0) * v.value(3.0, 1.0)));
}

TEST_CASE("field grid stores and interpolates the weighted amplitude") {
    GridSpec spec{16.0, 16.0, 1e-3, 24, 24};
    const WeightedField v = canonical_field(1, 0.6, 1.0);
    FieldGrid fg = FieldGrid::sample(v, spec, 1, 0.6);
    // on the canonical shape the stored amplitude is exactly 1 at nodes
    CHECK(fg.amp_value(5, 7) == doctest::Approx(1.0).epsilon(1e-9));
    // interpolation error between nodes stays small
    CHECK(fg.value(3.7, 2.3) == doctest::Approx(v.value(3.7, 2.3)).epsilon(1e-3));
    // extrapolation reuses the envelope ansatz
    CHECK(fg.value(40.0, 2.0) == doctest::Approx(v.value(40.0, 2.0)).epsilon(0.05));
    const WeightedNormReport rep = fg.norm_report();
    CHECK(rep.norm_Xkappa >= 1.0);
}

TEST_CASE("apply_L of the zero field is zero; t=0 row is zero") {
    const ModelParams& pm = params();
    WeightedField z{[](double, double) { return 0.0; }, [](double, double) { return 0.0; }};
    const LPointValue lv = apply_L_point(z, pm, 2.0, 1.0);
    CHECK(lv.value == 0.0);
    CHECK(lv.r_derivative == 0.0);
    const LPointValue at0 = apply_L_point(canonical_field(1, 0.6, 1.0), pm, 0.0, 1.0);
    CHECK(at0.value == 0.0);
}

TEST_CASE("W2 vanishes identically for tau in ((t-r)+, t]") {
    const ModelParams& pm = params();
    const WeightedField v = canonical_field(pm.m, pm.kappa, 1.0);
    for (auto [t, r] : {std::pair{4.0, 1.5}, {1.0, 2.0}}) {
        for (double frac : {0.05, 0.4, 0.9}) {
            const double lo = std::max(t - r, 0.0);
            const double tau = lo + frac * (t - lo);
            const double s = t - tau;  // s <= r here
            if (s <= 0.0) continue;
            const ThetaParts parts = duhamel_W_parts(v, pm, s, r, tau);
            CHECK(parts.w2 == 0.0);
        }
    }
}

TEST_CASE("W-decomposition consistency with g = |v(tau,.)|^p") {
    const ModelParams& pm = params();
    const WeightedField v = canonical_field(pm.m, pm.kappa, 1.0);
    const QuadOptions tight{1e-16, 1e-8, 2000};
    for (auto [s, r, tau] : {std::tuple{3.0, 1.0, 1.5}, {0.8, 2.0, 0.7}}) {
        const ThetaParts parts = duhamel_W_parts(v, pm, s, r, tau, tight, true, false);
        const double lhs = 2.0 * (parts.w1 + parts.w2);
        const double rhs = parts.w3 + parts.w4;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-5));
    }
}

TEST_CASE("apply_L power bound: log-log slope near p on the canonical family") {
    const ModelParams& pm = params();
    GridSpec spec{8.0, 8.0, 1e-3, 10, 10};
    QuadOptions quad{1e-15, 1e-3, 120};
    std::vector<double> norms_v, norms_L;
    for (double amp : {0.5, 1.0, 2.0}) {
        FieldGrid vg = FieldGrid::sample(canonical_field(pm.m, pm.kappa, amp * 1e-3), spec,
                                         pm.m, pm.kappa);
        FieldGrid lg = apply_L(vg.field(), pm, spec, pm.kappa, quad);
        norms_v.push_back(vg.norm_report().norm_Xkappa);
        norms_L.push_back(lg.norm_report().norm_Xkappa);
    }
    const double slope = oracles::loglog_slope(norms_v, norms_L);
    CHECK(slope == doctest::Approx(pm.p).epsilon(0.06));
}

TEST_CASE("picard: zero data fixes zero in one look") {
    ModelParams pm = params();
    pm.epsilon = 0.0;
    PicardOptions opts;
    opts.grid = GridSpec{8.0, 8.0, 1e-3, 8, 8};
    const PicardResult res = picard_solve(pm, pm.kappa, opts);
    CHECK(res.trace.converged);
    CHECK(res.trace.iterates.size() == 1);
    CHECK(res.field.norm_report().norm_Xkappa == 0.0);
}

TEST_CASE("picard rejects inadmissible parameters by name") {
    ModelParams pm = ModelParams::make(4, 2.0, 1.5, 0.6, 1e-3);  // p below the window
    PicardOptions opts;
    CHECK_THROWS_WITH_AS(picard_solve(pm, 0.6, opts),
                         doctest::Contains("p <= p0(n+mu)"), std::domain_error);
}

TEST_CASE("picard contracts on a coarse admissible configuration") {
    const ModelParams& pm = params();
    PicardOptions opts;
    opts.grid = GridSpec{8.0, 8.0, 1e-3, 10, 10};
    opts.quad = QuadOptions{1e-15, 1e-3, 120};
    opts.tol = 1e-6;
    opts.max_iter = 6;
    const PicardResult res = picard_solve(pm, pm.kappa, opts);
    CHECK(res.trace.converged);
    CHECK(res.trace.residual < 1e-5);
    REQUIRE(res.trace.iterates.size() >= 3);
    for (std::size_t k = 2; k < res.trace.iterates.size(); ++k)
        CHECK(res.trace.iterates[k].ratio < 1.0);
    // ||v0|| dominates, L contribution is a small perturbation at eps=1e-3
    CHECK(res.trace.iterates[1].increment < 0.1 * res.trace.iterates[0].norm_X);
}
