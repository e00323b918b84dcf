#include <CLI11.hpp>

#include "scalewave/runner.hpp"

namespace {

void add_common(CLI::App* cmd, scalewave::ExperimentConfig& cfg, std::string& config_path) {
    cmd->add_option("--config", config_path, "flat key-value config file (CLI flags override)");
    cmd->add_option("--n", cfg.n, "even spatial dimension >= 4");
    cmd->add_option("--mu", cfg.mu, "damping coefficient (delta = 1 fixes nu)");
    cmd->add_option("--p", cfg.p, "nonlinearity exponent (0 = window midpoint)");
    cmd->add_option("--kappa", cfg.kappa, "weight exponent (0 = window midpoint)");
    cmd->add_option("--epsilon", cfg.epsilon, "data amplitude");
    cmd->add_option("--tmax", cfg.tmax, "time extent");
    cmd->add_option("--rmax", cfg.rmax, "radial extent");
    cmd->add_option("--grid", cfg.grid, "grid points per axis");
    cmd->add_option("--tol", cfg.tol, "iteration tolerance");
    cmd->add_option("--max-iter", cfg.max_iter, "Picard iteration cap");
    cmd->add_option("--out", cfg.out, "output directory");
    cmd->add_option("--seed", cfg.seed, "probe-point jitter seed");
    cmd->add_option("--fd-h", cfg.fd_h, "finite-difference grid spacing");
    cmd->add_option("--fd-t-end", cfg.fd_t_end, "finite-difference end time");
    cmd->add_flag("--allow-violation", cfg.allow_violation,
                  "run the harness with violated hypotheses (negative controls)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"scalewave: radial wave kernels, weighted estimates and Picard solver"};
    app.require_subcommand(1);

    scalewave::ExperimentConfig cfg;
    std::string config_path;

    auto* exponents = app.add_subcommand("exponents", "critical exponents and windows");
    exponents->add_flag("--dump-kernels", cfg.dump_kernels, "dump H_j term lists as JSON");
    auto* linear = app.add_subcommand("propagate-linear", "evaluate v0 on a grid");
    auto* semi = app.add_subcommand("solve-semilinear", "Picard iteration for the integral equation");
    auto* verify = app.add_subcommand("verify-estimates", "numerical checks of the inequalities");
    auto* oracle = app.add_subcommand("compare-oracle", "kernel propagator vs FD cross-validation");
    auto* probe = app.add_subcommand("blowup-probe", "exploratory amplitude sweep");

    for (CLI::App* cmd : {exponents, linear, semi, verify, oracle, probe})
        add_common(cmd, cfg, config_path);

    CLI11_PARSE(app, argc, argv);

    scalewave::ExperimentConfig resolved;
    try {
        if (!config_path.empty()) resolved = scalewave::ExperimentConfig::load_file(config_path);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }

    CLI::App* active = app.get_subcommands().front();
    resolved.subcommand = active->get_name();
    // CLI flags that were actually passed override file values.
    auto override_if = [&](const char* flag, auto member) {
        if (active->count(flag)) resolved.*member = cfg.*member;
    };
    override_if("--n", &scalewave::ExperimentConfig::n);
    override_if("--mu", &scalewave::ExperimentConfig::mu);
    override_if("--p", &scalewave::ExperimentConfig::p);
    override_if("--kappa", &scalewave::ExperimentConfig::kappa);
    override_if("--epsilon", &scalewave::ExperimentConfig::epsilon);
    override_if("--tmax", &scalewave::ExperimentConfig::tmax);
    override_if("--rmax", &scalewave::ExperimentConfig::rmax);
    override_if("--grid", &scalewave::ExperimentConfig::grid);
    override_if("--tol", &scalewave::ExperimentConfig::tol);
    override_if("--max-iter", &scalewave::ExperimentConfig::max_iter);
    override_if("--out", &scalewave::ExperimentConfig::out);
    override_if("--seed", &scalewave::ExperimentConfig::seed);
    override_if("--fd-h", &scalewave::ExperimentConfig::fd_h);
    override_if("--fd-t-end", &scalewave::ExperimentConfig::fd_t_end);
    override_if("--allow-violation", &scalewave::ExperimentConfig::allow_violation);
    if (active == exponents && exponents->count("--dump-kernels"))
        resolved.dump_kernels = cfg.dump_kernels;

    return scalewave::run_experiment(resolved);
}
