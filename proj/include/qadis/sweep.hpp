#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "qadis/disorder.hpp"
#include "qadis/ensemble.hpp"
#include "qadis/ising.hpp"
#include "qadis/stats.hpp"

namespace qadis {

/// Batch experiment description: one disorder ensemble per (alpha, sigma)
/// grid cell, optional annealing runs per (alpha, action) cell.
struct SweepConfig {
    IsingProblem problem;
    std::vector<double> alpha_grid = {0.1, 0.2, 0.5, 1.0, 2.0, 4.0};
    std::vector<std::pair<double, double>> disorder_grid = {{0.05, 0.035}};
    bool quantize = false;
    bool clamp = false;
    std::uint64_t realizations = 100000;
    std::uint64_t master_seed = 1;
    int workers = 0;

    struct Dynamics {
        std::vector<double> actions;
        double angular_factor = 6.283185307179586476925286766559;
        double step_tol = 1e-6;
    };
    std::optional<Dynamics> dynamics;

    std::filesystem::path out_dir = "out";
};

/// Parses a sweep config file (JSON, schema documented in the README).
/// Unset fields keep their defaults. An inline "problem" object or a
/// "problem_file" path (resolved relative to the config file) is required.
SweepConfig load_sweep_config(const std::filesystem::path& path);

struct SweepReport {
    struct Cell {
        std::size_t index = 0;
        double alpha = 0.0;
        double sigma_h = 0.0;
        double sigma_j = 0.0;
        std::uint64_t seed = 0;
        bool ok = false;
        std::string error;
        double ground_probability = 0.0;
        std::optional<double> beta;
        std::optional<double> jsd_to_fit;
    };
    bool ok = false;
    std::filesystem::path manifest_path;
    std::vector<Cell> cells;
};

/// Runs every grid cell: ensemble -> level distribution -> Boltzmann fit ->
/// exports, writing a manifest that lists every output file with its
/// parameters and seed. Cell failures are recorded and do not stop the
/// sweep; report.ok is false if any cell failed.
SweepReport run_sweep(const SweepConfig& config);

/// Per-level comparison of two output distributions under one ideal
/// problem/spectrum: JSD, the aligned probability table and both fits.
struct CompareReport {
    double jsd = 0.0;  // raw fraction; reports print it as a percentage
    struct Row {
        double energy = 0.0;
        std::uint64_t degeneracy = 0;
        double p_a = 0.0;
        double p_b = 0.0;
    };
    std::vector<Row> rows;
    std::optional<BoltzmannFit> fit_a;
    std::optional<BoltzmannFit> fit_b;
};

CompareReport compare(const OutputDistribution& dist_a,
                      const OutputDistribution& dist_b, const IsingProblem& ideal,
                      const Spectrum& spectrum);

/// Human-readable rendering of a comparison (JSD as a percentage).
std::string render_compare_report(const CompareReport& report);

}  // namespace qadis
