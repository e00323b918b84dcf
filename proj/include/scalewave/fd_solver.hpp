#pragma once

#include <optional>
#include <string>
#include <vector>

#include "scalewave/radial_profile.hpp"

namespace scalewave {

struct FdConfig {
    int n = 4;
    double mu = 0.0;
    double nu = 0.0;
    std::optional<double> p;  // absent => linear run
    double r_min = 0.0;       // 0 => defaults to 2h
    double r_max = 16.0;
    double h = 1.0 / 128.0;
    double cfl = 0.9;  // dt = cfl*h
    double t_end = 4.0;
    enum class Boundary { absorbing, reflecting } outer_bc = Boundary::absorbing;
    double blowup_threshold_factor = 1e6;
    std::vector<double> snapshot_times;
    bool track_energy = false;
};

struct FdSnapshot {
    double t;
    std::vector<double> u;
};

struct FdRun {
    enum class Status { completed, blowup_detected, unstable } status = Status::completed;
    double blowup_time = 0.0;
    std::vector<double> r_nodes;
    std::vector<FdSnapshot> snapshots;
    std::vector<double> energy_times;
    std::vector<double> energy_history;
    std::string message;
};

// Second-order centered scheme in r, explicit three-level scheme in t; the
// damping term uses the time-centered (u^{k+1}-u^{k-1})/(2dt) average so the
// update stays an explicit scalar division.
FdRun fd_solve(const FdConfig& cfg, const RadialProfile& f, const RadialProfile& g);

struct BlowupProbePoint {
    double p;
    double epsilon;
    FdRun::Status status;
    double blowup_time;  // meaningful when status == blowup_detected
};

struct BlowupProbeTable {
    std::vector<BlowupProbePoint> points;
    // largest epsilon with completed status, per p (NaN when none completed)
    std::vector<std::pair<double, double>> completed_boundary;
};

BlowupProbeTable blowup_probe(const FdConfig& base, const RadialProfile& f,
                              const RadialProfile& g, const std::vector<double>& p_values,
                              const std::vector<double>& epsilon_values);

}  // namespace scalewave
