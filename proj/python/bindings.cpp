#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scalewave/duhamel.hpp"
#include "scalewave/estimates.hpp"
#include "scalewave/exponents.hpp"
#include "scalewave/fd_solver.hpp"
#include "scalewave/propagator.hpp"

namespace py = pybind11;
using namespace scalewave;

namespace {

py::dict window_dict(const AdmissibleWindow& w) {
    py::dict d;
    d["p_low"] = w.p_low;
    d["p_high"] = w.p_high;
    d["kappa1"] = w.kappa1;
    d["kappa2"] = w.kappa2;
    d["q"] = w.q;
    return d;
}

py::dict report_dict(const EstimateReport& rep) {
    py::dict d;
    d["name"] = rep.name;
    d["weighted_sup"] = rep.weighted_sup;
    d["stability"] = rep.stability;
    d["applicable"] = rep.applicable;
    d["pass"] = rep.pass;
    d["note"] = rep.note;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "radial wave kernels, weighted estimates and Picard iteration";

    // exponent algebra
    m.def("strauss_exponent", &strauss_exponent, py::arg("d"));
    m.def("fujita_exponent", &fujita_exponent, py::arg("d"));
    m.def("mu_upper_bound", &mu_upper_bound, py::arg("n"));
    m.def("secondary_exponents", [](int n, double mu) {
        const SecondaryExponents s = secondary_exponents(n, mu);
        py::dict d;
        d["p2"] = s.p2;
        d["p_crit"] = s.p_crit;
        d["m_tilde"] = s.m_tilde;
        return d;
    });
    m.def("blowup_range_exponent", &blowup_range_exponent, py::arg("n"), py::arg("mu"),
          py::arg("delta"));
    m.def(
        "admissible_window",
        [](int n, double mu, double p) {
            return window_dict(p > 0 ? admissible_window(n, mu, p) : admissible_window(n, mu));
        },
        py::arg("n"), py::arg("mu"), py::arg("p") = 0.0);
    m.def(
        "model_params",
        [](int n, double mu, double p, double kappa, double epsilon) {
            const ModelParams pm = ModelParams::make(n, mu, p, kappa, epsilon);
            py::dict d;
            d["n"] = pm.n;
            d["m"] = pm.m;
            d["mu"] = pm.mu;
            d["nu"] = pm.nu;
            d["delta"] = pm.delta;
            d["p"] = pm.p;
            d["kappa"] = pm.kappa;
            d["epsilon"] = pm.epsilon;
            d["violations"] = validate(pm);
            return d;
        },
        py::arg("n"), py::arg("mu"), py::arg("p") = 0.0, py::arg("kappa") = 0.0,
        py::arg("epsilon") = 1e-3);

    // kernel engine
    m.def("kernel_terms", [](int mm, int j) {
        py::list out;
        for (const KernelTerm& t : build_Hj(mm, j).terms) {
            py::dict d;
            d["coef"] = t.coef;
            d["pow_rho"] = t.pow_rho;
            d["pow_shift"] = t.pow_shift;
            d["pow_quad"] = t.pow_quad();
            out.append(d);
        }
        return out;
    });
    m.def("eval_Hj", [](int mm, int j, double rho, double t, double r) {
        return eval_Hj(build_Hj(mm, j), rho, t, r);
    });
    m.def("eval_Kj", [](int mm, int j, double lam, double t, double r) {
        return eval_Kj(build_Hj(mm, j), lam, t, r);
    });
    m.def("eval_Ktildej", [](int mm, int j, double lam, double t, double r) {
        return eval_Ktildej(build_Hj(mm, j), lam, t, r);
    });
    m.def("eval_dr_Kj", [](int mm, double lam, double t, double r) {
        return eval_dr_Kj(build_Hj(mm, mm - 1), lam, t, r);
    });

    // radial profiles and the propagator
    py::class_<RadialProfile>(m, "RadialProfile")
        .def("__call__", [](const RadialProfile& p, double r) { return p.eval(r); })
        .def("deriv", [](const RadialProfile& p, double r, int order) {
            return p.eval_deriv(r, order);
        }, py::arg("r"), py::arg("order") = 1)
        .def_readonly("origin_exponent", &RadialProfile::origin_exponent)
        .def_readonly("tail_exponent", &RadialProfile::tail_exponent);
    m.def("zero_profile", &zero_profile);
    m.def("power_profile", &power_profile, py::arg("c"), py::arg("a"), py::arg("b"));
    m.def("bump_profile", &bump_profile, py::arg("amp"), py::arg("lo"), py::arg("hi"));
    m.def("data_profile_f", &data_profile_f, py::arg("m"), py::arg("kappa_bar"),
          py::arg("epsilon"));
    m.def("data_profile_g", &data_profile_g, py::arg("m"), py::arg("kappa_bar"),
          py::arg("epsilon"));

    m.def("theta_w12", [](const RadialProfile& g, int mm, double t, double r) {
        return theta_w12(g, mm, t, r);
    });
    m.def("theta_w34", [](const RadialProfile& g, int mm, double t, double r) {
        return theta_w34(g, mm, t, r);
    });
    m.def("theta_r_derivative", [](const RadialProfile& g, int mm, double t, double r) {
        return theta_r_derivative(g, mm, t, r);
    });

    py::class_<LinearSolution>(m, "LinearSolution")
        .def("value", [](const LinearSolution& s, double t, double r) { return s.value(t, r); })
        .def("r_derivative", [](const LinearSolution& s, double t, double r) {
            return s.r_derivative(t, r);
        });
    m.def("v0_solution", [](const RadialProfile& f, const RadialProfile& g, int n) {
        return v0_solution(f, g, n);
    });

    m.def("phi_kappa", &phi_kappa, py::arg("t"), py::arg("r"), py::arg("kappa"));

    // Duhamel / Picard
    m.def(
        "picard_solve",
        [](int n, double mu, double p, double kappa, double epsilon, int grid, double tmax,
           double tol, int max_iter) {
            const ModelParams pm = ModelParams::make(n, mu, p, kappa, epsilon);
            PicardOptions opts;
            opts.grid = GridSpec{tmax, tmax, 1e-3, grid, grid};
            opts.tol = tol;
            opts.max_iter = max_iter;
            const PicardResult res = picard_solve(pm, pm.kappa, opts);
            py::dict d;
            d["converged"] = res.trace.converged;
            d["diverged"] = res.trace.diverged;
            d["status"] = res.trace.status;
            d["residual"] = res.trace.residual;
            py::list its;
            for (const PicardIterate& it : res.trace.iterates) {
                py::dict i;
                i["norm_X"] = it.norm_X;
                i["triple_norm"] = it.triple_norm;
                i["increment"] = it.increment;
                i["ratio"] = it.ratio;
                its.append(i);
            }
            d["iterates"] = its;
            return d;
        },
        py::arg("n"), py::arg("mu"), py::arg("p") = 0.0, py::arg("kappa") = 0.0,
        py::arg("epsilon") = 1e-3, py::arg("grid") = 16, py::arg("tmax") = 8.0,
        py::arg("tol") = 1e-6, py::arg("max_iter") = 8);

    // fd oracle
    m.def(
        "fd_solve",
        [](int n, double mu, double nu, py::object p, double h, double t_end, double r_max,
           const RadialProfile& f, const RadialProfile& g, std::vector<double> snapshots) {
            FdConfig cfg;
            cfg.n = n;
            cfg.mu = mu;
            cfg.nu = nu;
            if (!p.is_none()) cfg.p = p.cast<double>();
            cfg.h = h;
            cfg.t_end = t_end;
            cfg.r_max = r_max;
            cfg.snapshot_times = std::move(snapshots);
            const FdRun run = fd_solve(cfg, f, g);
            py::dict d;
            d["status"] = run.status == FdRun::Status::completed        ? "completed"
                          : run.status == FdRun::Status::blowup_detected ? "blowup_detected"
                                                                         : "unstable";
            d["blowup_time"] = run.blowup_time;
            d["r"] = run.r_nodes;
            py::list snaps;
            for (const FdSnapshot& s : run.snapshots) {
                py::dict sd;
                sd["t"] = s.t;
                sd["u"] = s.u;
                snaps.append(sd);
            }
            d["snapshots"] = snaps;
            return d;
        },
        py::arg("n"), py::arg("mu"), py::arg("nu"), py::arg("p"), py::arg("h"),
        py::arg("t_end"), py::arg("r_max"), py::arg("f"), py::arg("g"),
        py::arg("snapshots") = std::vector<double>{});

    // estimates harness
    m.def(
        "verify_convolution_bound",
        [](double a, double b) { return report_dict(verify_convolution_bound(a, b)); },
        py::arg("a"), py::arg("b"));
    m.def(
        "verify_estimates",
        [](int n, double mu, double p, double kappa, double y_max, double t_max) {
            const ModelParams pm = ModelParams::make(n, mu, p, kappa, 1e-3);
            HarnessConfig hc;
            hc.y_max = y_max;
            hc.t_max = t_max;
            hc.r_max = t_max;
            py::list out;
            for (const EstimateReport& rep : verify_all(pm, hc)) out.append(report_dict(rep));
            return out;
        },
        py::arg("n"), py::arg("mu"), py::arg("p") = 0.0, py::arg("kappa") = 0.0,
        py::arg("y_max") = 200.0, py::arg("t_max") = 60.0);
}
