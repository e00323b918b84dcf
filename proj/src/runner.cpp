#include "scalewave/runner.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "scalewave/duhamel.hpp"
#include "scalewave/estimates.hpp"
#include "scalewave/exponents.hpp"
#include "scalewave/fd_solver.hpp"
#include "scalewave/propagator.hpp"

namespace scalewave {

namespace {

using nlohmann::json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
        : out_(path) {
        if (!out_) throw std::runtime_error("cannot open " + path.string());
        for (std::size_t i = 0; i < header.size(); ++i)
            out_ << (i ? "," : "") << header[i];
        out_ << "\n";
    }
    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << fmt17(values[i]);
        out_ << "\n";
    }
    void row_mixed(const std::vector<std::string>& values) {
        for (std::size_t i = 0; i < values.size(); ++i) out_ << (i ? "," : "") << values[i];
        out_ << "\n";
    }

private:
    std::ofstream out_;
};

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string());
    out << text;
}

std::vector<double> log1p_grid(double max, int count) {
    std::vector<double> xs;
    for (int i = 0; i < count; ++i) xs.push_back(std::expm1(std::log1p(max) * i / (count - 1.0)));
    return xs;
}

std::vector<double> log_grid(double lo, double hi, int count) {
    std::vector<double> xs;
    for (int i = 0; i < count; ++i) xs.push_back(lo * std::pow(hi / lo, i / (count - 1.0)));
    return xs;
}

json report_json(const EstimateReport& rep) {
    return json{{"name", rep.name},
                {"weighted_sup", rep.weighted_sup},
                {"weighted_sup_grown", rep.weighted_sup_grown},
                {"stability", rep.stability},
                {"probe", rep.probe},
                {"applicable", rep.applicable},
                {"pass", rep.pass},
                {"note", rep.note}};
}

int cmd_exponents(const ExperimentConfig& cfg, const std::filesystem::path& outdir) {
    const ModelParams pm = ModelParams::make(cfg.n, cfg.mu, cfg.p, cfg.kappa, cfg.epsilon);
    const AdmissibleWindow w = admissible_window(cfg.n, cfg.mu, pm.p);
    const SecondaryExponents sec = secondary_exponents(cfg.n, cfg.mu);

    json j{{"n", cfg.n},
           {"mu", cfg.mu},
           {"nu", pm.nu},
           {"delta", pm.delta},
           {"m", pm.m},
           {"p", pm.p},
           {"kappa", pm.kappa},
           {"p0_n_plus_mu", w.p_low},
           {"p_window", {w.p_low, w.p_high}},
           {"kappa_window", {w.kappa1, w.kappa2}},
           {"q", w.q},
           {"M_n", mu_upper_bound(cfg.n)},
           {"M_tilde_n", sec.m_tilde},
           {"p2_n", sec.p2},
           {"p_crit", sec.p_crit},
           {"c_n", PropagatorConstants::make(cfg.n).c_n},
           {"blowup_exponent_delta_informational",
            {{"delta", 1.0}, {"value", blowup_range_exponent(cfg.n, cfg.mu, 1.0)}}},
           {"violations", validate(pm)}};
    write_text(outdir / "exponents.json", j.dump(2) + "\n");

    if (cfg.dump_kernels) {
        json terms = json::array();
        for (int jj = 0; jj <= pm.m; ++jj) {
            const KernelSum& ks = build_Hj(pm.m, jj);
            json one{{"m", ks.m}, {"j", ks.j}, {"terms", json::array()}};
            for (const KernelTerm& t : ks.terms)
                one["terms"].push_back({{"coef", t.coef},
                                        {"pow_rho", t.pow_rho},
                                        {"pow_shift", t.pow_shift},
                                        {"pow_quad", t.pow_quad()}});
            terms.push_back(one);
        }
        write_text(outdir / "kernel_terms.json", terms.dump(2) + "\n");
    }
    std::cout << j.dump(2) << std::endl;
    return 0;
}

int cmd_propagate_linear(const ExperimentConfig& cfg, const std::filesystem::path& outdir) {
    const ModelParams pm = ModelParams::make(cfg.n, cfg.mu, cfg.p, cfg.kappa, cfg.epsilon);
    const RadialProfile f = data_profile_f(pm.m, pm.kappa, pm.epsilon);
    const RadialProfile g = data_profile_g(pm.m, pm.kappa, pm.epsilon);
    const LinearSolution sol = v0_solution(f, g, pm.n, QuadOptions{1e-14, 1e-7, 600});

    CsvWriter csv(outdir / "linear_field.csv",
                  {"t", "r", "v0", "dr_v0", "weight_ratio_value", "weight_ratio_deriv"});
    const auto ts = log1p_grid(cfg.tmax, cfg.grid);
    const auto rs = log_grid(1e-3, cfg.rmax, cfg.grid);
    for (double t : ts) {
        for (double r : rs) {
            const double v = sol.value(t, r);
            const double dv = sol.r_derivative(t, r);
            const double phi = phi_kappa(t, r, pm.kappa);
            const double wv = pm.epsilon * std::pow(r, 1 - pm.m) / (1.0 + r) * phi;
            const double wd = pm.epsilon * std::pow(r, -pm.m) * phi;
            csv.row({t, r, v, dv, pm.epsilon > 0 ? std::abs(v) / wv : 0.0,
                     pm.epsilon > 0 ? std::abs(dv) / wd : 0.0});
        }
    }
    return 0;
}

int cmd_solve_semilinear(const ExperimentConfig& cfg, const std::filesystem::path& outdir) {
    const ModelParams pm = ModelParams::make(cfg.n, cfg.mu, cfg.p, cfg.kappa, cfg.epsilon);
    PicardOptions opts;
    opts.grid = GridSpec{cfg.tmax, cfg.rmax, 1e-3, cfg.grid, cfg.grid};
    opts.tol = cfg.tol;
    opts.max_iter = cfg.max_iter;

    const PicardResult result = picard_solve(pm, pm.kappa, opts);

    json trace{{"status", result.trace.status},
               {"converged", result.trace.converged},
               {"diverged", result.trace.diverged},
               {"residual", result.trace.residual},
               {"iterations", json::array()}};
    for (const PicardIterate& it : result.trace.iterates)
        trace["iterations"].push_back({{"norm_X", it.norm_X},
                                       {"triple_norm", it.triple_norm},
                                       {"increment", it.increment},
                                       {"ratio", it.ratio}});
    write_text(outdir / "picard_trace.json", trace.dump(2) + "\n");

    CsvWriter csv(outdir / "semilinear_field.csv", {"t", "r", "v", "dr_v", "u", "weight_ratio"});
    const FieldGrid& fg = result.field;
    for (int i = 0; i < opts.grid.nt; ++i) {
        for (int j = 0; j < opts.grid.nr; ++j) {
            const double t = fg.t_node(i), r = fg.r_node(j);
            const double v = fg.amp_value(i, j) * fg.envelope_value(t, r);
            const double dv = fg.amp_deriv(i, j) * fg.envelope_deriv(t, r);
            const double u = std::pow(1.0 + t, -0.5 * pm.mu) * v;
            const double wv = pm.epsilon * fg.envelope_value(t, r);
            csv.row({t, r, v, dv, u, pm.epsilon > 0 ? std::abs(v) / wv : 0.0});
        }
    }
    std::cout << trace.dump(2) << std::endl;
    return result.trace.converged ? 0 : 2;
}

int cmd_verify_estimates(const ExperimentConfig& cfg, const std::filesystem::path& outdir) {
    const ModelParams pm = ModelParams::make(cfg.n, cfg.mu, cfg.p, cfg.kappa, cfg.epsilon);
    HarnessConfig hc;
    hc.allow_violation = cfg.allow_violation;
    hc.seed = cfg.seed;
    hc.jitter = cfg.seed != 0 ? 0.02 : 0.0;
    hc.t_max = cfg.tmax > 0 ? std::max(cfg.tmax, 64.0) : 500.0;
    hc.r_max = hc.t_max;

    const std::vector<EstimateReport> reports = verify_all(pm, hc);

    json all = json::array();
    bool all_pass = true;
    CsvWriter table(outdir / "estimates_summary.csv",
                    {"name", "weighted_sup", "stability", "applicable", "pass"});
    for (const EstimateReport& rep : reports) {
        all.push_back(report_json(rep));
        write_text(outdir / ("estimate_" + rep.name + ".json"), report_json(rep).dump(2) + "\n");
        table.row_mixed({rep.name, fmt17(rep.weighted_sup), fmt17(rep.stability),
                         rep.applicable ? "1" : "0", rep.pass ? "1" : "0"});
        if (rep.applicable && !rep.pass) all_pass = false;
        std::cout << (rep.pass ? "[pass] " : (rep.applicable ? "[FAIL] " : "[skip] "))
                  << rep.name << "  sup=" << rep.weighted_sup << "  stability=" << rep.stability
                  << "\n";
    }
    write_text(outdir / "estimates_all.json", all.dump(2) + "\n");
    return all_pass ? 0 : 2;
}

int cmd_compare_oracle(const ExperimentConfig& cfg, const std::filesystem::path& outdir) {
    // Free-wave cross validation on smooth off-origin data.
    const RadialProfile f = bump_profile(1.0, 2.0, 3.0);
    const RadialProfile g = bump_profile(0.5, 2.0, 3.0);

    FdConfig fd;
    fd.n = cfg.n;
    fd.mu = 0.0;
    fd.nu = 0.0;
    fd.h = cfg.fd_h;
    fd.t_end = cfg.fd_t_end;
    fd.r_max = 3.0 + cfg.fd_t_end + 2.0;  // support + horizon + margin
    fd.snapshot_times = {1.0, 2.0, std::min(4.0, cfg.fd_t_end)};
    const FdRun run = fd_solve(fd, f, g);
    if (run.status != FdRun::Status::completed) return 2;

    const LinearSolution sol = v0_solution(f, g, cfg.n, QuadOptions{1e-14, 1e-8, 800});

    CsvWriter err(outdir / "oracle_errors.csv", {"t", "max_abs_fd", "max_abs_diff", "rel_linf"});
    CsvWriter snap(outdir / "oracle_snapshots.csv", {"t", "r", "u_fd", "v0"});
    for (const FdSnapshot& s : run.snapshots) {
        double max_fd = 0.0, max_diff = 0.0;
        for (std::size_t i = 0; i < run.r_nodes.size(); i += 4) {
            const double r = run.r_nodes[i];
            if (r < 1.0 || r > 8.0) continue;
            const double v = sol.value(s.t, r);
            snap.row({s.t, r, s.u[i], v});
            max_fd = std::max(max_fd, std::abs(s.u[i]));
            max_diff = std::max(max_diff, std::abs(s.u[i] - v));
        }
        err.row({s.t, max_fd, max_diff, max_fd > 0 ? max_diff / max_fd : 0.0});
    }
    return 0;
}

int cmd_blowup_probe(const ExperimentConfig& cfg, const std::filesystem::path& outdir) {
    const ModelParams pm = ModelParams::make(cfg.n, cfg.mu, cfg.p, cfg.kappa, 1.0);
    FdConfig fd;
    fd.n = cfg.n;
    fd.mu = cfg.mu;
    fd.nu = pm.nu;
    fd.h = 1.0 / 64.0;
    fd.t_end = cfg.fd_t_end > 0 ? std::max(cfg.fd_t_end, 8.0) : 8.0;
    fd.r_max = 3.0 + fd.t_end + 2.0;

    const RadialProfile f = bump_profile(1.0, 2.0, 3.0);
    const RadialProfile g = bump_profile(1.0, 2.0, 3.0);
    std::vector<double> eps;
    for (double s : {1e-2, 3e-2, 1e-1, 3e-1, 1.0, 3.0, 10.0, 30.0}) eps.push_back(cfg.epsilon * s);
    const BlowupProbeTable table = blowup_probe(fd, f, g, {pm.p}, eps);

    CsvWriter csv(outdir / "blowup_sweep.csv", {"p", "epsilon", "status", "t_star"});
    for (const BlowupProbePoint& pt : table.points)
        csv.row({pt.p, pt.epsilon,
                 pt.status == FdRun::Status::completed
                     ? 0.0
                     : (pt.status == FdRun::Status::blowup_detected ? 1.0 : 2.0),
                 pt.blowup_time});
    CsvWriter boundary(outdir / "blowup_boundary.csv", {"p", "largest_completed_epsilon"});
    for (const auto& [p, e] : table.completed_boundary) boundary.row({p, e});
    return 0;
}

}  // namespace

void ExperimentConfig::set(const std::string& key, const std::string& value) {
    auto as_double = [&] { return std::stod(value); };
    auto as_int = [&] { return std::stoi(value); };
    if (key == "subcommand") subcommand = value;
    else if (key == "n") n = as_int();
    else if (key == "mu") mu = as_double();
    else if (key == "p") p = as_double();
    else if (key == "kappa") kappa = as_double();
    else if (key == "epsilon") epsilon = as_double();
    else if (key == "tmax") tmax = as_double();
    else if (key == "rmax") rmax = as_double();
    else if (key == "grid") grid = as_int();
    else if (key == "tol") tol = as_double();
    else if (key == "max_iter") max_iter = as_int();
    else if (key == "out") out = value;
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "dump_kernels") dump_kernels = value == "1" || value == "true";
    else if (key == "allow_violation") allow_violation = value == "1" || value == "true";
    else if (key == "fd_h") fd_h = as_double();
    else if (key == "fd_t_end") fd_t_end = as_double();
    else throw std::domain_error("unknown config key: " + key);
}

std::string ExperimentConfig::snapshot() const {
    std::ostringstream os;
    os << "subcommand " << subcommand << "\n";
    os << "n " << n << "\n";
    os << "mu " << fmt17(mu) << "\n";
    os << "p " << fmt17(p) << "\n";
    os << "kappa " << fmt17(kappa) << "\n";
    os << "epsilon " << fmt17(epsilon) << "\n";
    os << "tmax " << fmt17(tmax) << "\n";
    os << "rmax " << fmt17(rmax) << "\n";
    os << "grid " << grid << "\n";
    os << "tol " << fmt17(tol) << "\n";
    os << "max_iter " << max_iter << "\n";
    os << "out " << out << "\n";
    os << "seed " << seed << "\n";
    os << "dump_kernels " << (dump_kernels ? 1 : 0) << "\n";
    os << "allow_violation " << (allow_violation ? 1 : 0) << "\n";
    os << "fd_h " << fmt17(fd_h) << "\n";
    os << "fd_t_end " << fmt17(fd_t_end) << "\n";
    return os.str();
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::domain_error("cannot read config file: " + path);
    ExperimentConfig cfg;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::string key, value;
        if (!(ls >> key)) continue;
        std::getline(ls, value);
        const auto pos = value.find_first_not_of(" \t=");
        value = pos == std::string::npos ? "" : value.substr(pos);
        cfg.set(key, value);
    }
    return cfg;
}

int run_experiment(ExperimentConfig cfg) {
    try {
        const std::filesystem::path outdir(cfg.out);
        std::filesystem::create_directories(outdir);
        write_text(outdir / "config.snapshot", cfg.snapshot());

        if (cfg.subcommand == "exponents") return cmd_exponents(cfg, outdir);
        if (cfg.subcommand == "propagate-linear") return cmd_propagate_linear(cfg, outdir);
        if (cfg.subcommand == "solve-semilinear") return cmd_solve_semilinear(cfg, outdir);
        if (cfg.subcommand == "verify-estimates") return cmd_verify_estimates(cfg, outdir);
        if (cfg.subcommand == "compare-oracle") return cmd_compare_oracle(cfg, outdir);
        if (cfg.subcommand == "blowup-probe") return cmd_blowup_probe(cfg, outdir);
        std::cerr << "unknown subcommand: " << cfg.subcommand << "\n";
        return 1;
    } catch (const QuadratureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid configuration: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace scalewave
