#pragma once

#include <filesystem>
#include <string>

#include "qadis/disorder.hpp"
#include "qadis/dynamics.hpp"
#include "qadis/ensemble.hpp"
#include "qadis/ising.hpp"
#include "qadis/stats.hpp"

namespace qadis::io {

/// Problem file (JSON): {"n": int, "alpha": real, "h": [n reals],
/// "couplers": [{"i": int, "j": int, "value": real}, ...]}.
IsingProblem load_problem(const std::filesystem::path& path);
void save_problem(const IsingProblem& problem, const std::filesystem::path& path);

/// Spectrum export: CSV with header `energy,degeneracy`.
void save_spectrum_csv(const Spectrum& spectrum, const std::filesystem::path& path);

/// Distribution export: CSV `config_bits,ideal_energy,count,probability`,
/// rows ascending by config_bits. The ideal problem supplies the energy
/// column. Re-ingestable via load_distribution_csv.
void save_distribution_csv(const OutputDistribution& dist, const IsingProblem& ideal,
                           const std::filesystem::path& path);
OutputDistribution load_distribution_csv(const std::filesystem::path& path, int n);

/// Level export: CSV `energy,degeneracy,count,probability`.
void save_levels_csv(const LevelDistribution& levels,
                     const std::filesystem::path& path);
LevelDistribution load_levels_csv(const std::filesystem::path& path);

/// Plot-ready two-column histogram: CSV `energy,probability`.
void save_histogram_csv(const LevelDistribution& levels,
                        const std::filesystem::path& path);

/// Sample file: header line `n=<int>`, then rows `<bitstring>,<occurrences>`.
/// Character k of the bitstring is qubit k: '0' for spin +1, '1' for -1.
OutputDistribution ingest_samples(const std::filesystem::path& path,
                                  const IsingProblem& problem);
void save_samples(const OutputDistribution& dist, const std::filesystem::path& path);

/// Schedule override file (JSON): {"a": [...], "b": [...]}, polynomial
/// coefficients highest degree first, GHz.
Schedule load_schedule(const std::filesystem::path& path);

/// Fit report (JSON): {beta, log_likelihood, mean_energy_residual,
/// support_size}.
void save_fit_report(const BoltzmannFit& fit, const std::filesystem::path& path);

/// State dump (diagnostic): CSV `basis_index,re,im`.
void save_state_csv(const QuantumState& state, const std::filesystem::path& path);

/// Fixed 17-significant-digit decimal formatting used by every export, so
/// reruns produce byte-identical files.
std::string format_double(double v);

}  // namespace qadis::io
