#include "scalewave/fd_solver.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scalewave {

namespace {

struct Workspace {
    std::vector<double> r;
    double h, dt;
    int n;
    std::size_t size;
};

double radial_laplacian(const std::vector<double>& u, const Workspace& ws, std::size_t i) {
    const double h2 = ws.h * ws.h;
    if (i == 0) {
        // zero-Neumann-like one-sided closure at r_min (validated for data
        // supported away from the origin)
        return 2.0 * (u[1] - u[0]) / h2;
    }
    const double second = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / h2;
    const double first = (u[i + 1] - u[i - 1]) / (2.0 * ws.h);
    return second + (ws.n - 1.0) / ws.r[i] * first;
}

}  // namespace

FdRun fd_solve(const FdConfig& cfg, const RadialProfile& f, const RadialProfile& g) {
    if (!(cfg.h > 0.0) || !(cfg.r_max > 0.0) || !(cfg.t_end >= 0.0))
        throw std::domain_error("fd_solve: invalid grid configuration");
    if (!(cfg.cfl > 0.0) || cfg.cfl > 0.9)
        throw std::domain_error("fd_solve: requires 0 < cfl <= 0.9");

    Workspace ws;
    ws.h = cfg.h;
    ws.dt = cfg.cfl * cfg.h;
    ws.n = cfg.n;
    const double r_min = cfg.r_min > 0.0 ? cfg.r_min : 2.0 * cfg.h;
    const std::size_t npts = static_cast<std::size_t>(std::floor((cfg.r_max - r_min) / cfg.h)) + 1;
    if (npts < 8) throw std::domain_error("fd_solve: grid too coarse");
    ws.size = npts;
    ws.r.resize(npts);
    for (std::size_t i = 0; i < npts; ++i) ws.r[i] = r_min + i * cfg.h;

    FdRun run;
    run.r_nodes = ws.r;

    std::vector<double> prev(npts), curr(npts), next(npts);
    for (std::size_t i = 0; i < npts; ++i) prev[i] = f.eval(ws.r[i]);

    auto nonlinearity = [&](double u) {
        return cfg.p ? std::pow(std::abs(u), *cfg.p) : 0.0;
    };

    double initial_max = 0.0;
    for (double u : prev) initial_max = std::max(initial_max, std::abs(u));
    const double blow_level = cfg.blowup_threshold_factor * std::max(initial_max, 1e-300);

    auto apply_outer_bc = [&](std::vector<double>& unew, const std::vector<double>& uold) {
        if (cfg.outer_bc == FdConfig::Boundary::reflecting)
            unew[npts - 1] = 0.0;
        else  // first-order outflow u_t + u_r = 0
            unew[npts - 1] =
                uold[npts - 1] - ws.dt / ws.h * (uold[npts - 1] - uold[npts - 2]);
    };

    // First step by Taylor expansion using u_tt from the equation at t = 0.
    for (std::size_t i = 0; i + 1 < npts; ++i) {
        const double gi = g.eval(ws.r[i]);
        const double utt = radial_laplacian(prev, ws, i) - cfg.mu * gi -
                           cfg.nu * cfg.nu * prev[i] + nonlinearity(prev[i]);
        curr[i] = prev[i] + ws.dt * gi + 0.5 * ws.dt * ws.dt * utt;
    }
    apply_outer_bc(curr, prev);

    const std::size_t nsteps = static_cast<std::size_t>(std::ceil(cfg.t_end / ws.dt));
    std::vector<double> want = cfg.snapshot_times;
    std::sort(want.begin(), want.end());
    std::size_t want_idx = 0;

    // snapshots interpolate linearly between the bracketing time levels
    auto snapshot_if_due = [&](double t_old, double t_new, const std::vector<double>& uold,
                               const std::vector<double>& unew) {
        while (want_idx < want.size() && want[want_idx] <= t_new + 1e-12) {
            const double tw = want[want_idx];
            const double frac = std::clamp((tw - t_old) / (t_new - t_old), 0.0, 1.0);
            std::vector<double> u(npts);
            for (std::size_t i = 0; i < npts; ++i)
                u[i] = (1.0 - frac) * uold[i] + frac * unew[i];
            run.snapshots.push_back(FdSnapshot{tw, std::move(u)});
            ++want_idx;
        }
    };
    while (want_idx < want.size() && want[want_idx] <= 0.0) {
        run.snapshots.push_back(FdSnapshot{0.0, prev});
        ++want_idx;
    }

    // staggered energy: kinetic part at the half step, potential part as the
    // product of the spatial derivatives at the two levels
    auto energy = [&](const std::vector<double>& unew, const std::vector<double>& uold) {
        double e = 0.0;
        for (std::size_t i = 1; i + 1 < npts; ++i) {
            const double ut = (unew[i] - uold[i]) / ws.dt;
            const double ur_new = (unew[i + 1] - unew[i - 1]) / (2.0 * ws.h);
            const double ur_old = (uold[i + 1] - uold[i - 1]) / (2.0 * ws.h);
            e += 0.5 * (ut * ut + ur_new * ur_old) * std::pow(ws.r[i], ws.n - 1) * ws.h;
        }
        return e;
    };
    if (cfg.track_energy) {
        run.energy_times.push_back(0.0);
        run.energy_history.push_back(energy(curr, prev));
    }

    for (std::size_t k = 1; k <= nsteps; ++k) {
        const double t_k = k * ws.dt;
        const double a = 1.0 / (ws.dt * ws.dt);
        const double b = cfg.mu / (2.0 * ws.dt * (1.0 + t_k));
        const double mass = cfg.nu * cfg.nu / ((1.0 + t_k) * (1.0 + t_k));

        for (std::size_t i = 0; i + 1 < npts; ++i) {
            const double rhs = radial_laplacian(curr, ws, i) - mass * curr[i] +
                               nonlinearity(curr[i]);
            next[i] = (2.0 * a * curr[i] - (a - b) * prev[i] + rhs) / (a + b);
        }
        apply_outer_bc(next, curr);

        double umax = 0.0;
        for (double u : next) umax = std::max(umax, std::abs(u));
        if (!std::isfinite(umax) || (cfg.p && umax > blow_level)) {
            run.status = FdRun::Status::blowup_detected;
            run.blowup_time = t_k + ws.dt;
            run.message = "max|u| exceeded threshold";
            return run;
        }
        if (!cfg.p && initial_max > 0.0 && umax > 1e6 * initial_max) {
            run.status = FdRun::Status::unstable;
            run.message = "linear-mode norm growth beyond 1e6x initial";
            return run;
        }

        prev.swap(curr);
        curr.swap(next);
        snapshot_if_due(t_k, t_k + ws.dt, prev, curr);
        if (cfg.track_energy) {
            run.energy_times.push_back(t_k + ws.dt);
            run.energy_history.push_back(energy(curr, prev));
        }
    }
    return run;
}

BlowupProbeTable blowup_probe(const FdConfig& base, const RadialProfile& f,
                              const RadialProfile& g, const std::vector<double>& p_values,
                              const std::vector<double>& epsilon_values) {
    BlowupProbeTable table;
    for (double p : p_values) {
        double best = std::nan("");
        for (double eps : epsilon_values) {
            FdConfig cfg = base;
            cfg.p = p;
            RadialProfile fs = f, gs = g;
            auto scale = [eps](const RadialProfile& prof) {
                RadialProfile s = prof;
                auto ev = prof.eval;
                auto dv = prof.eval_deriv;
                s.eval = [=](double r) { return eps * ev(r); };
                s.eval_deriv = [=](double r, int o) { return eps * dv(r, o); };
                return s;
            };
            const FdRun run = fd_solve(cfg, scale(fs), scale(gs));
            table.points.push_back(BlowupProbePoint{p, eps, run.status, run.blowup_time});
            if (run.status == FdRun::Status::completed && !(eps <= best))  // NaN-safe max
                best = std::isnan(best) ? eps : std::max(best, eps);
        }
        table.completed_boundary.emplace_back(p, best);
    }
    return table;
}

}  // namespace scalewave
