#pragma once

#include <cstdint>
#include <map>
#include <string>

namespace scalewave {

// Flat key-value experiment configuration; file values are overridden by CLI
// flags and the resolved snapshot is written before any computation.
struct ExperimentConfig {
    std::string subcommand;
    int n = 4;
    double mu = 2.0;
    double p = 0.0;      // <= 0 selects the geometric midpoint default
    double kappa = 0.0;  // <= 0 selects the window midpoint default
    double epsilon = 1e-3;
    double tmax = 32.0;
    double rmax = 32.0;
    int grid = 64;
    double tol = 1e-6;
    int max_iter = 12;
    std::string out = "out";
    std::uint64_t seed = 0;
    bool dump_kernels = false;
    bool allow_violation = false;
    // fd oracle / probe knobs
    double fd_h = 1.0 / 128.0;
    double fd_t_end = 4.0;

    void set(const std::string& key, const std::string& value);  // throws on unknown key
    std::string snapshot() const;
    static ExperimentConfig load_file(const std::string& path);
};

// Dispatch on config.subcommand; returns the process exit code
// (0 ok, 1 domain/validation error, 2 numerical failure).
int run_experiment(ExperimentConfig cfg);

}  // namespace scalewave
